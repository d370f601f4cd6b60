#include "prophet/stackelberg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prophet/numeric.hpp"
#include "prophet/signaling.hpp"

namespace prophet {

std::string Policy::name() const {
    switch (kind) {
        case Kind::DP: return "dp";
        case Kind::HEM: return "hem";
        case Kind::MEDIAN: return "median";
        case Kind::DP_H: return "dp-h";
        case Kind::HEM_H: return "hem-h";
        case Kind::MEDIAN_H: return "median-h";
        case Kind::FixedThreshold: return "fixed";
    }
    return "?";
}

Profile Profile::full_information(const std::vector<Dist>& priors) {
    return {priors, priors};
}

double v1(double x, const Dist& h2) {
    return x * h2.cdf_left(x) + h2.upper_tail_value(x, true);
}

Dist binary_pooling(const Dist& d, double t) {
    const ConditionalSplit cs = d.conditional_split(t);
    return Dist::discrete({{cs.below_mean, cs.mass_below}, {cs.above_mean, 1.0 - cs.mass_below}});
}

double hem_threshold(const Profile& profile) {
    return 0.5 * expected_max(Instance(profile.strategies));
}

double b_m(const Dist& h2) { return h2.superquantile(0.5); }

std::vector<double> policy_thresholds(const Policy& policy, const Profile& profile) {
    const std::vector<Dist>& basis = policy.frozen() ? profile.priors : profile.strategies;
    const std::size_t n = basis.size();
    switch (policy.kind) {
        case Policy::Kind::DP:
        case Policy::Kind::DP_H:
            return dp_thresholds(Instance(basis));
        case Policy::Kind::HEM:
        case Policy::Kind::HEM_H: {
            const double t = 0.5 * expected_max(Instance(basis));
            return std::vector<double>(n, t);
        }
        case Policy::Kind::MEDIAN:
        case Policy::Kind::MEDIAN_H: {
            const double t = median_of_max(Instance(basis));
            return std::vector<double>(n, t);
        }
        case Policy::Kind::FixedThreshold:
            return std::vector<double>(n, policy.threshold);
    }
    return {};
}

EquilibriumOutcome eval_profile(const Policy& policy, const Profile& profile) {
    if (profile.strategies.size() != profile.priors.size() || profile.strategies.empty())
        throw std::invalid_argument("eval_profile: profile size mismatch");
    for (std::size_t i = 0; i < profile.strategies.size(); ++i) {
        const MpcCheck mpc = is_mpc(profile.strategies[i], profile.priors[i]);
        if (!mpc.ok)
            throw std::invalid_argument("eval_profile: strategy " + std::to_string(i + 1) +
                                        " is not a contraction of its prior");
    }
    EquilibriumOutcome out;
    out.profile = profile;
    out.thresholds = policy_thresholds(policy, profile);
    out.threshold_used = out.thresholds.front();
    out.win_probs.assign(profile.strategies.size(), 0.0);

    double reach = 1.0;
    for (std::size_t i = 0; i < profile.strategies.size(); ++i) {
        const Dist& g = profile.strategies[i];
        // Posterior atoms engineered to tie the threshold may be off by
        // an ulp from the recomputed threshold; accept within a hair.
        const double t = out.thresholds[i] - 1e-11 * (1.0 + std::abs(out.thresholds[i]));
        out.searcher_payoff += reach * g.upper_tail_value(t, true);
        out.win_probs[i] = reach * (1.0 - g.cdf_left(t));
        reach *= g.cdf_left(t);
        if (reach == 0.0) break;
    }
    const double opt = expected_max(Instance(profile.priors));
    out.ratio_vs_half_opt = opt > 0.0 ? out.searcher_payoff / (0.5 * opt) : 1.0;
    return out;
}

EquilibriumOutcome solve_dp_two_box(const Dist& h1, const Dist& h2) {
    const double l1 = h1.mean(), l2 = h2.mean();
    Profile profile;
    profile.priors = {h1, h2};
    if (l1 >= l2) {
        profile.strategies = {Dist::point(l1), h2};
    } else {
        // Box 1 faces the continuation value l2; it pools to an upper
        // support of exactly l2 with maximal mass.
        profile.strategies = {binary_reduction(best_response(h1, l2), h1), h2};
    }
    return eval_profile(Policy::dp(), profile);
}

namespace {

// theta and payoff pieces for the HEM pooling case come from
// f(t) = (H1(t) v1(a(t)) + (1 - H1(t)) v1(b(t))) / 2 - b(t).
double hem_fixed_point_gap(const Dist& h1, const Dist& h2, double t) {
    const double ml = h1.cdf_left(t);
    const double l1 = h1.mean();
    // Boundary limits; the slack keeps the conditional split away from
    // 0/eps degeneracies at the support edges.
    if (ml <= 1e-12) {
        return 0.5 * v1(l1, h2) - l1;
    }
    if (ml >= 1.0 - 1e-12) {
        return 0.5 * v1(l1, h2) - h1.upper();
    }
    const ConditionalSplit cs = h1.conditional_split(t);
    return 0.5 * (ml * v1(cs.below_mean, h2) + (1.0 - ml) * v1(cs.above_mean, h2)) -
           cs.above_mean;
}

}  // namespace

EquilibriumOutcome solve_hem_two_box(const Dist& h1, const Dist& h2) {
    if (!h1.is_continuous())
        throw std::invalid_argument("solve_hem_two_box: box 1 prior must be atomless");
    const double l1 = h1.mean();
    Profile profile;
    profile.priors = {h1, h2};
    if (l1 >= 0.5 * v1(l1, h2)) {
        // No-information equilibrium: box 1's mean already clears the
        // threshold it induces.
        profile.strategies = {Dist::point(l1), h2};
        return eval_profile(Policy::hem(), profile);
    }
    if (0.5 * v1(l1, h2) >= h1.upper()) {
        // The threshold exceeds box 1's support however box 1 plays; it
        // concedes (its strategy is payoff-irrelevant).
        profile.strategies = {Dist::point(l1), h2};
        return eval_profile(Policy::hem(), profile);
    }
    // Predicate bisection keeping the upper end on the side where the
    // pooled upper support clears the threshold (gap <= 0), so box 1's
    // atom is accepted despite fp noise at the fixed point.
    double lo = h1.lower(), hi = h1.upper();
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hem_fixed_point_gap(h1, h2, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    profile.strategies = {binary_pooling(h1, hi), h2};
    return eval_profile(Policy::hem(), profile);
}

EquilibriumOutcome solve_median_two_box(const Dist& h1, const Dist& h2) {
    const double level = b_m(h2);
    const double l1 = h1.mean();
    Profile profile;
    profile.priors = {h1, h2};
    if (l1 >= level) {
        profile.strategies = {Dist::point(l1), binary_reduction(best_response(h2, level), h2)};
        return eval_profile(Policy::median(), profile);
    }
    if (level > h1.upper())
        throw std::invalid_argument(
            "solve_median_two_box: pooling level above box 1's support is unsupported");
    profile.strategies = {binary_reduction(best_response(h1, level), h1),
                          binary_reduction(best_response(h2, level), h2)};
    return eval_profile(Policy::median(), profile);
}

Profile best_response_to_fixed(const std::vector<Dist>& priors,
                               const std::vector<double>& thresholds) {
    if (priors.size() != thresholds.size())
        throw std::invalid_argument("best_response_to_fixed: size mismatch");
    Profile p;
    p.priors = priors;
    p.strategies.reserve(priors.size());
    for (std::size_t i = 0; i < priors.size(); ++i)
        p.strategies.push_back(binary_reduction(best_response(priors[i], thresholds[i]), priors[i]));
    return p;
}

}  // namespace prophet
