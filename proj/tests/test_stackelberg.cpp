#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "prophet/cases.hpp"
#include "prophet/random_instances.hpp"
#include "prophet/signaling.hpp"
#include "prophet/stackelberg.hpp"

using namespace prophet;

TEST_CASE("v1 values") {
    const Dist h2 = Dist::uniform(0.0, 0.92);
    CHECK(v1(0.25, h2) == doctest::Approx(0.4940).epsilon(2e-4));
    CHECK(v1(0.0, h2) == doctest::Approx(h2.mean()).epsilon(1e-12));
    CHECK(v1(h2.upper(), h2) == doctest::Approx(h2.upper()).epsilon(1e-12));
    CHECK(v1(0.5, Dist::uniform(0.0, 1.0)) == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("binary pooling splits") {
    const Dist u = binary_pooling(Dist::uniform(0.0, 1.0), 0.5);
    REQUIRE(u.atoms().size() == 2);
    CHECK(u.atoms()[0].value == doctest::Approx(0.25));
    CHECK(u.atoms()[1].value == doctest::Approx(0.75));
    CHECK(u.atoms()[0].mass == doctest::Approx(0.5));
    CHECK(u.mean() == doctest::Approx(0.5).epsilon(1e-12));

    const Dist coin = Dist::discrete({{0.0, 0.8}, {1.0, 0.2}});
    const Dist pooled = binary_pooling(coin, 1.0);
    CHECK(pooled.atoms()[1].value == doctest::Approx(1.0));
    CHECK(pooled.mean() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("half-expected-max threshold of a profile") {
    const Instance priors = hemh3_counterexample_priors();
    const Profile full = Profile::full_information(priors.boxes);
    CHECK(hem_threshold(full) == doctest::Approx(19.0 / 54.0).epsilon(1e-12));

    // Two-box bound via the prior means.
    Rng rng(suite_seed(55));
    for (int k = 0; k < 25; ++k) {
        const auto [h1, h2] = random_continuous_pair(rng);
        const Profile p = Profile::full_information({h1, h2});
        CHECK(hem_threshold(p) <= 0.5 * (h1.mean() + h2.mean()) + 1e-12);
    }
}

TEST_CASE("median pooling level") {
    CHECK(b_m(Dist::discrete({{0.0, 0.8}, {1.0, 0.2}})) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(b_m(Dist::uniform(0.0, 1.0)) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(b_m(Dist::point(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("two-box backward-induction equilibrium") {
    // Equal or larger first mean: no information wins.
    const EquilibriumOutcome tie =
        solve_dp_two_box(Dist::uniform(0.0, 1.0), Dist::uniform(0.0, 0.9));
    CHECK(tie.searcher_payoff == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tie.win_probs[0] == doctest::Approx(1.0).epsilon(1e-12));

    // Smaller first mean: the payoff is the second mean either way.
    const EquilibriumOutcome pool =
        solve_dp_two_box(Dist::uniform(0.0, 0.5), Dist::uniform(0.0, 1.0));
    CHECK(pool.searcher_payoff == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pool.threshold_used == doctest::Approx(0.5).epsilon(1e-12));

    Rng rng(suite_seed(66));
    for (int k = 0; k < 30; ++k) {
        const auto [h1, h2] = random_continuous_pair(rng);
        const EquilibriumOutcome out = solve_dp_two_box(h1, h2);
        CHECK(out.searcher_payoff ==
              doctest::Approx(std::max(h1.mean(), h2.mean())).epsilon(1e-9));
        CHECK(out.ratio_vs_half_opt >= 1.0 - 1e-9);
    }
}

TEST_CASE("two-box half-expected-max equilibrium") {
    // The registered counterexample sits in the no-information case.
    const EquilibriumOutcome noinfo =
        solve_hem_two_box(Dist::uniform(0.0, 0.5), Dist::uniform(0.0, 0.92));
    CHECK(noinfo.searcher_payoff == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(noinfo.ratio_vs_half_opt < 1.0);

    // Pooling case: the pooled upper support pins the threshold.
    const Dist h1 = Dist::uniform(0.0, 0.4);
    const Dist h2 = Dist::uniform(0.0, 1.0);
    CHECK(h1.mean() < 0.5 * v1(h1.mean(), h2));
    const EquilibriumOutcome out = solve_hem_two_box(h1, h2);
    const double b_star = out.profile.strategies[0].atoms().back().value;
    CHECK(std::abs(b_star - hem_threshold(out.profile)) <= 1e-9);
    CHECK(out.win_probs[0] > 0.0);

    CHECK_THROWS(solve_hem_two_box(Dist::point(0.2), h2));  // atom-bearing box 1
}

TEST_CASE("two-box median equilibrium") {
    const Dist coin = Dist::discrete({{0.0, 0.8}, {1.0, 0.2}});
    const EquilibriumOutcome out = solve_median_two_box(coin, coin);
    CHECK(out.searcher_payoff == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(out.threshold_used == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(out.win_probs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.win_probs[1] == doctest::Approx(0.25).epsilon(1e-12));

    // Dominant first mean: no information wins outright.
    const EquilibriumOutcome lead = solve_median_two_box(Dist::uniform(0.8, 1.0), coin);
    CHECK(lead.searcher_payoff == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(lead.win_probs[0] == doctest::Approx(1.0).epsilon(1e-12));

    // Symmetric priors give symmetric strategies.
    const Dist u = Dist::uniform(0.0, 1.0);
    const EquilibriumOutcome sym = solve_median_two_box(u, u);
    CHECK(sym.profile.strategies[0].atoms().back().value ==
          doctest::Approx(sym.profile.strategies[1].atoms().back().value).epsilon(1e-12));
}

TEST_CASE("profile evaluation") {
    // Full information under a fixed threshold equals the classic payoff.
    Rng rng(suite_seed(77));
    for (int k = 0; k < 20; ++k) {
        const Instance inst = random_instance(rng, 4);
        const double T = rng.uniform(0.0, inst.max_upper());
        const EquilibriumOutcome out =
            eval_profile(Policy::fixed(T), Profile::full_information(inst.boxes));
        CHECK(out.searcher_payoff == doctest::Approx(nonstrategic_payoff(inst, T)).epsilon(1e-8));
        double total_win = 0.0;
        for (double w : out.win_probs) total_win += w;
        CHECK(total_win <= 1.0 + 1e-12);
        CHECK(out.searcher_payoff <= expected_max(inst) + 1e-9);
    }

    // The registered three-box median profile.
    const Instance priors = median3_counterexample_priors();
    const Dist pooled = binary_reduction(best_response(priors.boxes[1], 0.4), priors.boxes[1]);
    Profile profile{{priors.boxes[0], pooled, pooled}, priors.boxes};
    const EquilibriumOutcome out = eval_profile(Policy::median(), profile);
    CHECK(out.searcher_payoff == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(out.win_probs[0] == doctest::Approx(0.0));

    // A spread is rejected as a strategy.
    Profile bad{{Dist::uniform(0.0, 1.0)}, {Dist::point(0.5)}};
    CHECK_THROWS(eval_profile(Policy::fixed(0.2), bad));
}

TEST_CASE("full information matches the classic payoff under every policy") {
    Rng rng(suite_seed(99));
    for (int k = 0; k < 10; ++k) {
        const Instance inst = random_instance(rng, 4);
        const Profile full = Profile::full_information(inst.boxes);
        const ThresholdSpectrum sp = spectrum(inst);
        for (Policy policy : {Policy::dp(), Policy::dp_h(), Policy::hem(), Policy::hem_h(),
                              Policy::median(), Policy::median_h()}) {
            const EquilibriumOutcome out = eval_profile(policy, full);
            double expect = 0.0;
            switch (policy.kind) {
                case Policy::Kind::DP:
                case Policy::Kind::DP_H:
                    expect = nonstrategic_dp_payoff(inst);
                    break;
                case Policy::Kind::HEM:
                case Policy::Kind::HEM_H:
                    expect = nonstrategic_payoff(inst, sp.t_kw);
                    break;
                default:
                    expect = nonstrategic_payoff(inst, median_of_max(inst));
                    break;
            }
            CHECK(out.searcher_payoff == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("median pooling level above box 1's support is rejected") {
    const Dist low = Dist::uniform(0.0, 0.1);
    const Dist coin = Dist::discrete({{0.0, 0.8}, {1.0, 0.2}});
    CHECK_THROWS(solve_median_two_box(low, coin));  // level 0.4 unreachable
}

TEST_CASE("frozen-threshold best responses") {
    const Instance priors = dph3_counterexample_priors();
    const Profile profile = best_response_to_fixed(priors.boxes, dp_thresholds(priors));
    const EquilibriumOutcome out = eval_profile(Policy::dp_h(), profile);
    CHECK(out.searcher_payoff == doctest::Approx(0.2).epsilon(1e-12));

    // Zero threshold: the first box is always accepted at its mean.
    Rng rng(suite_seed(88));
    const Instance inst = random_instance(rng, 3);
    const Profile zero =
        best_response_to_fixed(inst.boxes, std::vector<double>(inst.boxes.size(), 0.0));
    const EquilibriumOutcome z = eval_profile(Policy::fixed(0.0), zero);
    CHECK(z.win_probs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z.searcher_payoff == doctest::Approx(inst.boxes[0].mean()).epsilon(1e-12));
}
