#pragma once

#include <cstdint>
#include <vector>

#include "prophet/numeric.hpp"
#include "prophet/stackelberg.hpp"

namespace prophet {

struct SimConfig {
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    int parallel_streams = 1;
};

struct SimResult {
    double payoff_mean = 0.0;
    double payoff_stderr = 0.0;
    std::vector<double> win_freqs;
    std::int64_t samples = 0;
};

/// One sampled reward from d. Each replicate of a simulation draws with
/// its own counter-derived generator.
double sample(const Dist& d, Rng& rng);

/// Samples full plays of the game: per replicate, each box's posterior
/// mean is drawn from its submitted strategy and the searcher walks the
/// boxes with the policy's thresholds. Replicate k is seeded by
/// mix_seed(seed, k), and block sums are combined in index order, so
/// identical (seed, samples) give bit-identical results for any
/// parallel_streams.
SimResult simulate(const Policy& policy, const Profile& profile, const SimConfig& cfg);

}  // namespace prophet
