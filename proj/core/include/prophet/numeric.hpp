#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace prophet {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
/// Exact for polynomials of degree <= 2n-1. Rules are cached per n.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Integrates f over [a, b] with an n-point Gauss-Legendre rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n);

/// Bisection for a decreasing-or-increasing continuous predicate.
/// Returns x in [lo, hi] with |f(x)| driven to the interval resolution;
/// requires sign(f(lo)) != sign(f(hi)) (zero endpoint values are returned
/// directly).
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol = 1e-13, int max_iter = 200);

/// SplitMix64 step; the basis of all seeded randomness in this project.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stateless mix of (seed, counter) into an independent 64-bit value.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

/// Tiny counter-based PRNG. Stream k of a simulation seed is
/// Rng(mix_seed(seed, k)), which makes parallel partitioning irrelevant
/// to the sampled values.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform draw on [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw on [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_;
};

}  // namespace prophet
