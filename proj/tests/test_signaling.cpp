#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "prophet/random_instances.hpp"
#include "prophet/signaling.hpp"

using namespace prophet;

TEST_CASE("best response cases") {
    const double s = 50.0;
    const Dist binary = Dist::discrete({{0.0, 1.0 - 1.0 / s}, {s, 1.0 / s}});  // mean 1
    const double T = 2.5;
    const PoolingStrategy br = best_response(binary, T);
    CHECK(br.kind == PoolingStrategy::Kind::ThresholdSignaling);
    CHECK(br.accept_prob == doctest::Approx(1.0 / T).epsilon(1e-12));
    const Dist red = binary_reduction(br, binary);
    REQUIRE(red.atoms().size() == 2);
    CHECK(red.atoms()[0].value == doctest::Approx(0.0));
    CHECK(red.atoms()[1].value == doctest::Approx(T));
    CHECK(red.atoms()[1].mass == doctest::Approx(1.0 / T).epsilon(1e-12));

    CHECK(best_response(binary, 0.5).kind == PoolingStrategy::Kind::NoInformation);
    CHECK(best_response(binary, s + 1.0).kind == PoolingStrategy::Kind::AlwaysRejected);
    CHECK(best_response(binary, s + 1.0).accept_prob == 0.0);
}

TEST_CASE("uniform prior pools the top half at 0.75") {
    const Dist u = Dist::uniform(0.0, 1.0);
    const PoolingStrategy br = best_response(u, 0.75);
    CHECK(br.accept_prob == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(br.cutoff.value() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(br.low_posterior.value() == doctest::Approx(0.25).epsilon(1e-10));

    // Grid oracle: acceptance maximized over cutoffs whose conditional
    // mean clears the threshold.
    double best = 0.0;
    for (int g = 1; g < 1000; ++g) {
        const double t = g / 1000.0;
        if ((t + 1.0) / 2.0 >= 0.75) best = std::max(best, 1.0 - t);
    }
    CHECK(br.accept_prob == doctest::Approx(best).epsilon(2e-3));

    const Dist red = binary_reduction(br, u);
    CHECK(red.atoms()[0].value == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(red.atoms()[0].mass == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(red.atoms()[1].value == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("binary reduction edge shapes") {
    const Dist u = Dist::uniform(0.0, 0.5);
    const Dist no_info = binary_reduction(best_response(u, 0.1), u);
    CHECK(no_info.is_point_mass());
    CHECK(no_info.mean() == doctest::Approx(0.25).epsilon(1e-12));

    const Dist coin = Dist::discrete({{0.0, 0.8}, {1.0, 0.2}});
    const Dist red = binary_reduction(best_response(coin, 0.4), coin);
    REQUIRE(red.atoms().size() == 2);
    CHECK(red.atoms()[0].value == doctest::Approx(0.0));
    CHECK(red.atoms()[0].mass == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(red.atoms()[1].value == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("mean preservation of the threshold strategy") {
    Rng rng(suite_seed(1001));
    for (int k = 0; k < 50; ++k) {
        const Dist d = random_box(rng);
        const double T = d.mean() + rng.uniform(0.01, 0.99) * (d.upper() - d.mean());
        const PoolingStrategy s = best_response(d, T);
        if (s.kind != PoolingStrategy::Kind::ThresholdSignaling) continue;
        const double recon =
            s.accept_prob * T + s.reject_prob() * s.low_posterior.value_or(0.0);
        CHECK(recon == doctest::Approx(d.mean()).epsilon(1e-10));
        if (s.low_posterior) CHECK(*s.low_posterior < T);
    }
}

TEST_CASE("contraction check") {
    const Dist u = Dist::uniform(0.0, 1.0);
    const Dist red = binary_reduction(best_response(u, 0.75), u);
    CHECK(is_mpc(red, u).ok);
    CHECK(is_mpc(Dist::point(u.mean()), u).ok);
    CHECK_FALSE(is_mpc(u, Dist::point(u.mean())).ok);  // a spread, not a contraction
    CHECK_FALSE(is_mpc(Dist::point(0.3), u).ok);       // mean mismatch

    Rng rng(suite_seed(2002));
    for (int k = 0; k < 30; ++k) {
        const Dist d = random_box(rng);
        const double T = d.mean() + rng.uniform(0.01, 0.99) * (d.upper() - d.mean());
        const Dist r = binary_reduction(best_response(d, T), d);
        CHECK(is_mpc(r, d).ok);
    }
}

TEST_CASE("inducing a threshold from a rejection product") {
    // Continuous IID: every rejection probability equals 1 - 1/N.
    const Instance iid = Instance::iid(Dist::uniform(0.0, 1.0), 4);
    const double P = std::pow(0.75, 4);
    const InducedThreshold ind = induce_threshold_by_product(iid, P);
    CHECK(ind.threshold == doctest::Approx(7.0 / 8.0).epsilon(1e-9));
    for (double p : ind.reject_probs) CHECK(p == doctest::Approx(0.75).epsilon(1e-9));

    // P = 0 pins the threshold at the largest mean.
    Rng rng(suite_seed(3003));
    const Instance r = random_instance(rng);
    const InducedThreshold zero = induce_threshold_by_product(r, 0.0);
    CHECK(zero.threshold == doctest::Approx(r.max_mean()));
    double prod = 1.0;
    for (double p : zero.reject_probs) prod *= p;
    CHECK(prod == 0.0);

    CHECK_THROWS(induce_threshold_by_product(r, 1.0));
    CHECK_THROWS(induce_threshold_by_product(r, -0.1));
}

TEST_CASE("plateau splitting lands on the lowest-index player") {
    const Dist top_heavy = Dist::discrete({{0.0, 0.4}, {1.0, 0.6}});
    const Instance two = Instance::iid(top_heavy, 2);
    const InducedThreshold ind = induce_threshold_by_product(two, 0.25);
    CHECK(ind.threshold == doctest::Approx(1.0));
    CHECK(ind.reject_probs[0] == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(ind.reject_probs[1] == doctest::Approx(0.4).epsilon(1e-12));

    // One player's range cannot cover the product alone.
    const Instance three = Instance::iid(top_heavy, 3);
    const double P = std::pow(2.0 / 3.0, 3);
    const InducedThreshold ind3 = induce_threshold_by_product(three, P);
    double prod = 1.0;
    for (double p : ind3.reject_probs) prod *= p;
    CHECK(prod == doctest::Approx(P).epsilon(1e-9));

    // Identical point masses: the whole product rides on partial atom
    // pooling at the shared top.
    const Instance points = Instance::iid(Dist::point(2.0), 3);
    const InducedThreshold indp = induce_threshold_by_product(points, 0.37);
    CHECK(indp.threshold == doctest::Approx(2.0));
    prod = 1.0;
    for (double p : indp.reject_probs) prod *= p;
    CHECK(prod == doctest::Approx(0.37).epsilon(1e-9));
}

TEST_CASE("random products are matched exactly") {
    Rng rng(suite_seed(4004));
    for (int k = 0; k < 40; ++k) {
        std::vector<Dist> boxes;
        const int n = 2 + static_cast<int>(rng.below(4));
        for (int i = 0; i < n; ++i) boxes.push_back(random_discrete_box(rng, 4, 5.0));
        const Instance inst(std::move(boxes));
        const double P = rng.uniform(0.01, 0.95);
        const InducedThreshold ind = induce_threshold_by_product(inst, P);
        double prod = 1.0;
        for (double p : ind.reject_probs) prod *= p;
        CHECK(prod == doctest::Approx(P).epsilon(1e-9));
    }
}
