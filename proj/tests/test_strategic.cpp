#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "prophet/cases.hpp"
#include "prophet/random_instances.hpp"
#include "prophet/signaling.hpp"
#include "prophet/strategic.hpp"

using namespace prophet;

TEST_CASE("strategic payoff walk") {
    // A no-information box swallows the walk.
    const Instance hem = hem_counterexample_priors();
    const double theta = 0.5 * 0.4940;
    CHECK(strategic_payoff(hem, theta) == doctest::Approx(0.25).epsilon(1e-9));

    // All boxes pooling: the closed form T (1 - (1 - 1/T)^(N-1)).
    const Instance tight = make_general_tightness_instance(5, 1e-3, 1e6);
    for (double T : {4.5, 4.2, 3.9995}) {
        const double expect = T * (1.0 - std::pow(1.0 - 1.0 / T, 4));
        CHECK(strategic_payoff(tight, T) == doctest::Approx(expect).epsilon(1e-12));
    }

    // Below every mean the first box is taken at its mean.
    const Instance iid_tight = make_iid_tightness_instance(20, 0.5, 100.0);
    CHECK(strategic_payoff(iid_tight, 19.5) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("closed form equals the walk above every mean") {
    Rng rng(suite_seed(909));
    for (int k = 0; k < 40; ++k) {
        const Instance inst = random_instance(rng);
        const double lo = inst.max_mean(), hi = inst.max_upper();
        if (hi <= lo + 1e-9) continue;
        const double T = lo + rng.uniform(0.05, 0.95) * (hi - lo);
        double prod = 1.0;
        for (const Dist& d : inst.boxes) prod *= best_response(d, T).reject_prob();
        CHECK(strategic_payoff(inst, T) == doctest::Approx(T * (1.0 - prod)).epsilon(1e-12));
    }
}

TEST_CASE("robustness report") {
    const RobustnessReport r = robustness_report(dp3_counterexample_priors(), 0.25);
    CHECK(r.u_strategic == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.ratio_strategic == doctest::Approx(0.25 / 0.55).epsilon(1e-12));

    const Instance points({Dist::point(1.0), Dist::point(2.0)});
    const RobustnessReport p = robustness_report(points, 0.0);
    CHECK(p.ratio_strategic == doctest::Approx(0.5).epsilon(1e-12));  // takes box 1's mean
    CHECK(p.u_nonstrategic == doctest::Approx(1.0).epsilon(1e-12));

    // Identical point masses: a zero threshold is already optimal.
    const RobustnessReport eq = robustness_report(Instance::iid(Dist::point(0.7), 3), 0.0);
    CHECK(eq.ratio_strategic == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eq.ratio_nonstrategic == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("half-expected-max robustness check") {
    // A dominant mean forces at least half the prophet value.
    const Instance dominant({Dist::point(10.0), Dist::uniform(0.0, 1.0)});
    const RobustnessReport r = check_kw_robustness(dominant);
    CHECK(r.ratio_strategic >= 0.5 - 1e-9);
    CHECK(r.ok());
}

TEST_CASE("pooling-cutoff bound on the prophet value") {
    // Single box: the bound dominates the mean.
    const Dist u = Dist::uniform(0.0, 1.0);
    const Instance one({u});
    const double T = 0.8;
    const PoolingStrategy s = best_response(u, T);
    const double bound = opt_upper_bound_cutoffs(one, T);
    CHECK(bound == doctest::Approx(s.reject_prob() * s.cutoff.value() + T * s.accept_prob)
                       .epsilon(1e-12));
    CHECK(bound >= u.mean() - 1e-12);

    // Tightness instance: the conceding box contributes its support top
    // and each binary box adds T times its acceptance.
    const int n = 4;
    const Instance tight = make_general_tightness_instance(n, 1e-3, 1e6);
    const double d = n - 1 - 1e-3;
    const double T2 = d + 0.5;
    CHECK(opt_upper_bound_cutoffs(tight, T2) == doctest::Approx(d + (n - 1)).epsilon(1e-9));
    CHECK(opt_upper_bound_cutoffs(tight, T2) >= expected_max(tight) - 1e-9);

    CHECK_THROWS(opt_upper_bound_cutoffs(tight, 0.5));  // below a mean
}

TEST_CASE("IID fixed point check") {
    const RobustnessReport bin = check_iid_robustness(
        Dist::discrete({{0.0, 2.0 / 3.0}, {1.0, 1.0 / 3.0}}), 3);
    CHECK(bin.opt == doctest::Approx(19.0 / 27.0).epsilon(1e-12));
    CHECK(bin.ok());

    const RobustnessReport pm = check_iid_robustness(Dist::point(0.6), 5);
    CHECK(pm.ratio_strategic == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pm.ratio_nonstrategic == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("IID deviation guarantee") {
    const RobustnessReport pm = check_iid_deviation_guarantee(Dist::point(0.6), 4);
    CHECK(pm.ratio_strategic == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pm.strategic_ok);

    const RobustnessReport u = check_iid_deviation_guarantee(Dist::uniform(0.0, 1.0), 6);
    CHECK(u.strategic_ok);
    CHECK_THROWS(check_iid_deviation_guarantee(Dist::point(1.0), 1));
}

TEST_CASE("instance factories") {
    const Instance g = make_general_tightness_instance(4, 0.01, 1000.0);
    CHECK(g.size() == 4);
    CHECK(g.boxes[0].mean() == doctest::Approx(2.99).epsilon(1e-12));
    CHECK(g.boxes[1].mean() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(make_general_tightness_instance(2, 0.01, 1000.0));

    const Instance iid = make_iid_tightness_instance(10, 0.5, 30.0);
    CHECK(iid.boxes[3].mean() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(iid.boxes[0].atoms()[0].mass == doctest::Approx(30.0 / 30.5).epsilon(1e-12));

    const Instance pct = make_percentage_instance(3);
    CHECK(pct.size() == 9);
    CHECK(pct.boxes[0].atoms().size() == 3);
    CHECK(pct.boxes[0].atoms()[2].value ==
          doctest::Approx(3.0 / (std::exp(1.0) - 2.0)).epsilon(1e-12));
}

TEST_CASE("percentage instance at n = 2 against exhaustive enumeration") {
    const Instance inst = make_percentage_instance(2);
    REQUIRE(inst.size() == 4);
    const std::vector<Atom>& atoms = inst.boxes[0].atoms();
    double opt = 0.0;
    // All 3^4 outcome combinations.
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    const double mx = std::max(
                        std::max(atoms[a].value, atoms[b].value),
                        std::max(atoms[c].value, atoms[d].value));
                    opt += atoms[a].mass * atoms[b].mass * atoms[c].mass * atoms[d].mass * mx;
                }
    CHECK(expected_max(inst) == doctest::Approx(opt).epsilon(1e-12));
}

TEST_CASE("scalar helpers behind the IID bounds") {
    // (1 - x^N) / (2 - x) stays above 1/2 up to 1 - 1/N.
    for (int n1 = 2; n1 <= 64; ++n1) {
        for (int j = 0; j <= 400; ++j) {
            const double x = (1.0 - 1.0 / n1) * j / 400.0;
            CHECK((1.0 - std::pow(x, n1)) / (2.0 - x) >= 0.5 - 1e-12);
        }
    }
    // (1 - x) / (N + 1 - N x^(1/N)) at x = ((N-1)/N)^N equals the cap.
    for (int n2 : {2, 3, 5, 10, 30}) {
        const double x = std::pow((n2 - 1.0) / n2, n2);
        const double val = (1.0 - x) / (n2 + 1.0 - n2 * std::pow(x, 1.0 / n2));
        CHECK(val == doctest::Approx(0.5 * (1.0 - x)).epsilon(1e-12));
    }
}

TEST_CASE("tabulated densities") {
    TabulatedDensity uniform = TabulatedDensity::from_function(+[](double) { return 1.0; }, 1024);
    CHECK_NOTHROW(uniform.validate());
    const Dist d = uniform.to_dist();
    CHECK(d.mean() == doctest::Approx(0.5).epsilon(1e-12));

    TabulatedDensity rising =
        TabulatedDensity::from_function(+[](double x) { return 2.0 * x; }, 2048);
    const LogConcaveReport rep = logconcave_robustness_check(
        std::vector<TabulatedDensity>(3, rising), 2.0, 0.0);
    CHECK(rep.log_concave_ok);
    CHECK(rep.endpoint_value_ok);
    CHECK(rep.endpoint_slope_ok);  // f' = 2 >= 0

    TabulatedDensity coarse = TabulatedDensity::from_function(+[](double) { return 1.0; }, 64);
    CHECK_THROWS(logconcave_robustness_check({coarse}, 1.0, 0.0));

    TabulatedDensity bad = uniform;
    for (double& v : bad.values) v *= 1.5;
    CHECK_THROWS(logconcave_robustness_check({bad}, 1.0, 0.0));

    // A strictly convex density is not log-concave on any grid.
    TabulatedDensity convex = TabulatedDensity::from_function(
        +[](double x) { return 0.4 + 7.2 * (x - 0.5) * (x - 0.5); }, 4096);
    const LogConcaveReport rep2 = logconcave_robustness_check({convex}, 0.1, 10.0);
    CHECK_FALSE(rep2.log_concave_ok);
}
