#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "prophet/cases.hpp"
#include "prophet/mc.hpp"
#include "prophet/random_instances.hpp"
#include "prophet/signaling.hpp"
#include "prophet/strategic.hpp"

using namespace prophet;

TEST_CASE("point-mass profile is deterministic") {
    Profile p{{Dist::point(0.4), Dist::point(0.7)}, {Dist::point(0.4), Dist::point(0.7)}};
    SimConfig cfg;
    cfg.samples = 5000;
    cfg.seed = 3;
    const SimResult res = simulate(Policy::fixed(0.5), p, cfg);
    CHECK(res.payoff_mean == doctest::Approx(0.7));
    CHECK(res.payoff_stderr == 0.0);
    CHECK(res.win_freqs[0] == 0.0);
    CHECK(res.win_freqs[1] == doctest::Approx(1.0));
}

TEST_CASE("identical config is bit-identical across stream counts") {
    Rng rng(suite_seed(2024));
    const Instance inst = random_instance(rng, 4);
    const double T = 0.4 * inst.max_upper();
    const Profile profile =
        best_response_to_fixed(inst.boxes, std::vector<double>(inst.boxes.size(), T));
    SimConfig cfg;
    cfg.samples = 50000;
    cfg.seed = 99;
    cfg.parallel_streams = 1;
    const SimResult one = simulate(Policy::fixed(T), profile, cfg);
    cfg.parallel_streams = 4;
    const SimResult four = simulate(Policy::fixed(T), profile, cfg);
    cfg.parallel_streams = 7;
    const SimResult seven = simulate(Policy::fixed(T), profile, cfg);
    CHECK(one.payoff_mean == four.payoff_mean);
    CHECK(one.payoff_stderr == four.payoff_stderr);
    CHECK(one.payoff_mean == seven.payoff_mean);
    CHECK(one.win_freqs == four.win_freqs);
}

TEST_CASE("equilibrium profile of the registered two-box case") {
    // Box 1 reveals nothing, so its posterior always clears the
    // threshold: the payoff is its mean with zero variance.
    const Instance priors = hem_counterexample_priors();
    Profile profile{{Dist::point(0.25), priors.boxes[1]}, priors.boxes};
    SimConfig cfg;
    cfg.samples = 1000000;
    cfg.seed = 5;
    const SimResult res = simulate(Policy::hem(), profile, cfg);
    CHECK(std::abs(res.payoff_mean - 0.25) <= std::max(4.0 * res.payoff_stderr, 1e-12));
}

TEST_CASE("strategic analytic payoff within four standard errors") {
    Rng rng(suite_seed(2025));
    const Instance inst = random_instance(rng, 5);
    const double T = 0.5 * expected_max(inst);
    const Profile profile =
        best_response_to_fixed(inst.boxes, std::vector<double>(inst.boxes.size(), T));
    SimConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 31337;
    const SimResult res = simulate(Policy::fixed(T), profile, cfg);
    CHECK(std::abs(res.payoff_mean - strategic_payoff(inst, T)) <=
          std::max(4.0 * res.payoff_stderr, 1e-9));
}

TEST_CASE("inverse-cdf sampling passes a Kolmogorov bound") {
    const Dist u = Dist::uniform(0.0, 1.0);
    Rng rng(suite_seed(13));
    const int n = 100000;
    std::vector<double> xs(n);
    for (double& x : xs) x = sample(u, rng);
    std::sort(xs.begin(), xs.end());
    double d_stat = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = xs[static_cast<std::size_t>(i)];
        d_stat = std::max(d_stat, std::abs((i + 1.0) / n - f));
        d_stat = std::max(d_stat, std::abs(f - static_cast<double>(i) / n));
    }
    // 99% Kolmogorov quantile.
    CHECK(d_stat * std::sqrt(static_cast<double>(n)) < 1.63);
}

TEST_CASE("two-atom sampling frequencies inside the binomial interval") {
    const Dist coin = Dist::discrete({{0.2, 0.3}, {0.9, 0.7}});
    Rng rng(suite_seed(14));
    const int n = 200000;
    int high = 0;
    for (int i = 0; i < n; ++i)
        if (sample(coin, rng) == 0.9) ++high;
    const double sigma = std::sqrt(0.7 * 0.3 / n);
    CHECK(std::abs(high / static_cast<double>(n) - 0.7) <= 5.0 * sigma);
}

TEST_CASE("point mass always samples its value") {
    const Dist p = Dist::point(0.42);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) CHECK(sample(p, rng) == 0.42);
}
