#pragma once

#include <vector>

#include "prophet/dist.hpp"

namespace prophet {

/// An ordered sequence of reward distributions faced by the searcher.
struct Instance {
    std::vector<Dist> boxes;

    explicit Instance(std::vector<Dist> b);
    static Instance iid(const Dist& d, int n);

    int size() const { return static_cast<int>(boxes.size()); }
    double max_upper() const;
    double max_mean() const;
    std::vector<double> means() const;
};

/// The classic half-approximation thresholds of an instance.
struct ThresholdSpectrum {
    double t_kw = 0.0;          // half the expected maximum
    double t_sc = 0.0;          // sup{t : P(max >= t) >= 1/2}
    double median_lower = 0.0;  // inf{c : P(max >= c) <= 1/2}
    double t_star = 0.0;        // fixed point of T = sum_i E[(X_i - T)^+]

    double hi() const { return t_sc > t_star ? t_sc : t_star; }
};

/// Prophet value: E[max_i X_i], integrated exactly over the union
/// breakpoint grid (the product CDF is a polynomial on every cell).
double expected_max(const Instance& inst);

/// inf{c : P(max_i X_i >= c) <= 1/2}, evaluated with left limits; at an
/// atom-induced jump this is the atom value itself.
double median_of_max(const Instance& inst);

/// The fixed point of T = sum_i E[(X_i - T)^+] (strictly decreasing map,
/// solved by bisection to 1e-10).
double t_star(const Instance& inst);

ThresholdSpectrum spectrum(const Instance& inst);

/// Expected payoff of the threshold stopping rule "accept the first
/// X_i >= T" when every box reveals its reward truthfully. Mass exactly
/// at T is accepted.
double nonstrategic_payoff(const Instance& inst, double T);

/// Backward-induction values V_{1..N+1} with V_{N+1} = 0 and
/// V_i = E[max(X_i, V_{i+1})]; box i's optimal acceptance threshold is
/// V_{i+1}.
std::vector<double> dp_values(const Instance& inst);

/// Per-box acceptance thresholds of the optimal stopping rule (the
/// continuation values V_{i+1}).
std::vector<double> dp_thresholds(const Instance& inst);

/// Value V_1 of the optimal stopping rule.
double nonstrategic_dp_payoff(const Instance& inst);

}  // namespace prophet
