#include "prophet/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "prophet/stackelberg.hpp"

namespace prophet {

namespace {

std::vector<double> random_weights(Rng& rng, int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : w) {
        x = 0.05 + rng.uniform01();
        sum += x;
    }
    for (double& x : w) x /= sum;
    return w;
}

}  // namespace

Dist random_box(Rng& rng) {
    for (;;) {
        const int n_atoms = static_cast<int>(rng.below(4));
        int n_segs = static_cast<int>(rng.below(3));
        if (n_atoms + n_segs == 0) n_segs = 1;
        std::vector<Dist> parts;
        for (int i = 0; i < n_atoms; ++i) parts.push_back(Dist::point(rng.uniform(0.0, 10.0)));
        for (int i = 0; i < n_segs; ++i) {
            double a = rng.uniform(0.0, 9.0);
            double b = a + rng.uniform(0.1, 10.0 - a);
            parts.push_back(Dist::uniform(a, b));
        }
        const Dist d = Dist::mixture(random_weights(rng, static_cast<int>(parts.size())), parts);
        if (d.mean() > 1e-6) return d;
    }
}

Dist random_continuous_box(Rng& rng, bool full_upper) {
    const int n_segs = 1 + static_cast<int>(rng.below(2));
    std::vector<Dist> parts;
    for (int i = 0; i < n_segs; ++i) {
        double a = rng.uniform(0.0, 0.8);
        double b = a + rng.uniform(0.05, 1.0 - a);
        if (full_upper && i == n_segs - 1) b = 1.0;
        parts.push_back(Dist::uniform(a, b));
    }
    return Dist::mixture(random_weights(rng, n_segs), parts);
}

Dist random_discrete_box(Rng& rng, int max_atoms, double scale) {
    for (;;) {
        const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_atoms - 1)));
        std::vector<double> values;
        while (static_cast<int>(values.size()) < n) {
            const double v = rng.uniform(0.0, scale);
            bool distinct = true;
            for (double u : values) distinct = distinct && std::abs(u - v) > 1e-6 * scale;
            if (distinct) values.push_back(v);
        }
        const std::vector<double> w = random_weights(rng, n);
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < n; ++i) pts.emplace_back(values[static_cast<std::size_t>(i)],
                                                     w[static_cast<std::size_t>(i)]);
        const Dist d = Dist::discrete(std::move(pts));
        if (d.mean() > 1e-6 * scale) return d;
    }
}

Instance random_instance(Rng& rng, int max_boxes) {
    const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_boxes - 1)));
    std::vector<Dist> boxes;
    boxes.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) boxes.push_back(random_box(rng));
    return Instance(std::move(boxes));
}

std::pair<Dist, Dist> random_continuous_pair(Rng& rng) {
    return {random_continuous_box(rng, false), random_continuous_box(rng, false)};
}

std::pair<Dist, Dist> random_hem_pooling_pair(Rng& rng) {
    for (;;) {
        Dist h1 = random_continuous_box(rng, true);
        Dist h2 = random_continuous_box(rng, false);
        const double l1 = h1.mean();
        const double half_v = 0.5 * v1(l1, h2);
        // Pooling regime, strictly: the induced threshold is above the
        // mean and reachable within box 1's support.
        if (l1 < half_v - 1e-4 && half_v < h1.upper() - 1e-4) return {h1, h2};
    }
}

}  // namespace prophet
