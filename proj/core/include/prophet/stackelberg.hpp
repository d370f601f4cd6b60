#pragma once

#include <string>
#include <vector>

#include "prophet/classic.hpp"
#include "prophet/dist.hpp"

namespace prophet {

/// Searcher stopping policies the boxes respond to. DP/HEM/MEDIAN
/// recompute their thresholds from the submitted posterior-mean
/// distributions; the -H variants freeze them from the priors;
/// FixedThreshold is a constant.
struct Policy {
    enum class Kind { DP, HEM, MEDIAN, DP_H, HEM_H, MEDIAN_H, FixedThreshold };

    Kind kind = Kind::FixedThreshold;
    double threshold = 0.0;  // FixedThreshold only

    static Policy dp() { return {Kind::DP}; }
    static Policy hem() { return {Kind::HEM}; }
    static Policy median() { return {Kind::MEDIAN}; }
    static Policy dp_h() { return {Kind::DP_H}; }
    static Policy hem_h() { return {Kind::HEM_H}; }
    static Policy median_h() { return {Kind::MEDIAN_H}; }
    static Policy fixed(double T) { return {Kind::FixedThreshold, T}; }

    /// True when thresholds are precomputed from the priors.
    bool frozen() const {
        return kind == Kind::DP_H || kind == Kind::HEM_H || kind == Kind::MEDIAN_H ||
               kind == Kind::FixedThreshold;
    }
    std::string name() const;
};

/// A full strategy profile: each box's submitted posterior-mean
/// distribution alongside its prior. Every strategy must be a
/// mean-preserving contraction of its prior.
struct Profile {
    std::vector<Dist> strategies;
    std::vector<Dist> priors;

    static Profile full_information(const std::vector<Dist>& priors);
};

struct EquilibriumOutcome {
    Profile profile;
    double searcher_payoff = 0.0;
    std::vector<double> win_probs;
    double threshold_used = 0.0;       // box 1's threshold
    std::vector<double> thresholds;    // per box
    double ratio_vs_half_opt = 0.0;    // payoff / (OPT(priors) / 2)
};

/// E[max(x, X2)] for X2 ~ h2.
double v1(double x, const Dist& h2);

/// Two-atom distribution {E[X | X < t], E[X | X >= t]} from splitting d
/// at t.
Dist binary_pooling(const Dist& d, double t);

/// Half the expected maximum of the submitted strategies.
double hem_threshold(const Profile& profile);

/// Upper support of box 2's binary pooling at its lower median: the
/// mean of the top half of the prior's mass.
double b_m(const Dist& h2);

/// Per-box acceptance thresholds the policy induces for this profile.
std::vector<double> policy_thresholds(const Policy& policy, const Profile& profile);

/// Walks the boxes in order accepting the first posterior mean that
/// meets its threshold. Validates that each strategy is a
/// mean-preserving contraction of its prior.
EquilibriumOutcome eval_profile(const Policy& policy, const Profile& profile);

/// Two-box equilibrium under the prior-free DP policy: the searcher's
/// payoff is max of the prior means.
EquilibriumOutcome solve_dp_two_box(const Dist& h1, const Dist& h2);

/// Two-box equilibrium under the prior-free half-expected-max policy.
/// Box 2 reveals fully; box 1 either reveals nothing (when its mean
/// already clears half of v1 at the mean) or plays the unique binary
/// pooling whose upper support equals the resulting threshold. Requires
/// an atomless box-1 prior.
EquilibriumOutcome solve_hem_two_box(const Dist& h1, const Dist& h2);

/// Two-box equilibrium under the prior-free median-of-max policy: both
/// boxes pool to the upper support B_M of box 2's lower-median split
/// (box 1 reveals nothing when its mean already reaches B_M).
EquilibriumOutcome solve_median_two_box(const Dist& h1, const Dist& h2);

/// Best responses to per-box fixed thresholds: no information when the
/// mean clears the threshold, otherwise binary pooling at it.
Profile best_response_to_fixed(const std::vector<Dist>& priors,
                               const std::vector<double>& thresholds);

}  // namespace prophet
