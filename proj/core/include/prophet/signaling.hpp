#pragma once

#include <vector>

#include "prophet/classic.hpp"
#include "prophet/dist.hpp"

namespace prophet {

/// A player's optimal information revelation against a threshold
/// stopping policy with threshold T: no information when T <= mean,
/// concession when T lies above the support, and otherwise the pooling
/// of the largest top mass whose posterior mean is exactly T.
PoolingStrategy best_response(const Dist& d, double T);

/// The two-point posterior-mean distribution induced by a strategy
/// (a point mass at the prior mean for NoInformation and, by
/// convention, for the payoff-irrelevant AlwaysRejected case).
Dist binary_reduction(const PoolingStrategy& s, const Dist& d);

struct MpcCheck {
    bool ok = false;
    double max_violation = 0.0;  // worst breach of integral-CDF dominance
    double mean_gap = 0.0;       // |mean(g) - mean(h)|
};

/// Whether g is a mean-preserving contraction of h: equal means and
/// integral-CDF dominance of g by h everywhere. `tol` is scaled by the
/// support bound internally.
MpcCheck is_mpc(const Dist& g, const Dist& h, double tol = 1e-9);

struct InducedThreshold {
    double threshold = 0.0;
    std::vector<double> reject_probs;  // per player; product equals the target
};

/// Finds a threshold T whose per-player rejection probabilities can be
/// chosen (each individually achievable by partial pooling at T) with
/// product exactly P, 0 <= P < 1. The minimal rejection product is
/// nondecreasing in T; where it jumps across P, T is pinned at the jump
/// and the lowest-index player's partial atom pooling is scaled to hit
/// the product, extending to the next players if one player's feasible
/// range cannot cover it.
InducedThreshold induce_threshold_by_product(const Instance& inst, double P);

}  // namespace prophet
