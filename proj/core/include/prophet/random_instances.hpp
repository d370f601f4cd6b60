#pragma once

#include <cstdint>
#include <utility>

#include "prophet/classic.hpp"
#include "prophet/numeric.hpp"

namespace prophet {

/// Seed of replicate k in every fixed property suite. Purely a function
/// of k, so failures reproduce across machines and runs.
inline std::uint64_t suite_seed(std::uint64_t k) {
    return mix_seed(0x70726f7068657431ULL, k);
}

/// Mixture of up to 3 atoms and up to 2 uniform pieces on [0, 10].
Dist random_box(Rng& rng);

/// Atomless mixture of 1-2 uniform pieces on [0, 1]; with `full_upper`
/// the support reaches 1.
Dist random_continuous_box(Rng& rng, bool full_upper);

/// Up to max_atoms distinct atoms on [0, scale].
Dist random_discrete_box(Rng& rng, int max_atoms, double scale);

/// 2..max_boxes random boxes.
Instance random_instance(Rng& rng, int max_boxes = 8);

std::pair<Dist, Dist> random_continuous_pair(Rng& rng);

/// Continuous two-box priors in the half-expected-max pooling regime
/// (box 1's mean below half of v1 at the mean, threshold reachable).
std::pair<Dist, Dist> random_hem_pooling_pair(Rng& rng);

}  // namespace prophet
