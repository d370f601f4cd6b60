#include "prophet/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prophet/numeric.hpp"

namespace prophet {

PoolingStrategy best_response(const Dist& d, double T) {
    if (T < 0.0) throw std::invalid_argument("best_response: negative threshold");
    PoolingStrategy s;
    s.threshold = T;
    const double mean = d.mean();
    if (T <= mean) {
        s.kind = PoolingStrategy::Kind::NoInformation;
        s.accept_prob = 1.0;
        return s;
    }
    if (T > d.upper()) {
        s.kind = PoolingStrategy::Kind::AlwaysRejected;
        s.accept_prob = 0.0;
        s.low_posterior = mean;
        return s;
    }
    const Dist::TopPool pool = d.pool_top(T);
    s.kind = PoolingStrategy::Kind::ThresholdSignaling;
    s.accept_prob = std::min(pool.mass, 1.0);
    s.cutoff = pool.cutoff;
    s.partial_mass = pool.partial_mass;
    const double w = s.accept_prob;
    if (w < 1.0) {
        double low = (mean - T * w) / (1.0 - w);
        s.low_posterior = std::max(low, 0.0);
    }
    return s;
}

Dist binary_reduction(const PoolingStrategy& s, const Dist& d) {
    const double mean = d.mean();
    if (s.kind != PoolingStrategy::Kind::ThresholdSignaling) return Dist::point(mean);
    const double w = s.accept_prob;
    if (w <= 0.0) return Dist::point(mean);
    if (w >= 1.0) return Dist::point(s.threshold);
    return Dist::discrete({{s.low_posterior.value_or(0.0), 1.0 - w}, {s.threshold, w}});
}

MpcCheck is_mpc(const Dist& g, const Dist& h, double tol) {
    MpcCheck out;
    const double top = std::max(g.upper(), h.upper());
    const double scale = 1.0 + top;
    out.mean_gap = std::abs(g.mean() - h.mean());

    // D(t) = int_0^t (H - G); require min_t D >= -tol. Per cell the
    // difference of CDFs is quadratic, so the minimum is at a cell
    // endpoint or at a root of that quadratic.
    const std::vector<double> pts = merged_breakpoints({&g, &h}, top);
    double dmin = 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double u = pts[k], v = pts[k + 1];
        const double len = v - u;
        if (len <= 0.0) continue;
        // phi(x) = H(x) - G(x) = d0 + d1 (x-u) + d2 (x-u)^2 on (u, v).
        double d0 = h.cdf(u) - g.cdf(u);
        double d1 = 0.0, d2 = 0.0;
        const double mid = 0.5 * (u + v);
        if (const Segment* s = h.segment_at(mid)) {
            d1 += s->density_at(u);
            d2 += 0.5 * s->slope();
        }
        if (const Segment* s = g.segment_at(mid)) {
            d1 -= s->density_at(u);
            d2 -= 0.5 * s->slope();
        }
        auto d_at = [&](double t) {  // D(u + t) - D(u)
            return d0 * t + 0.5 * d1 * t * t + d2 * t * t * t / 3.0;
        };
        dmin = std::min(dmin, acc);
        // Interior critical points: roots of phi.
        if (d2 != 0.0) {
            const double disc = d1 * d1 - 4.0 * d2 * d0;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                for (double r : {(-d1 - sq) / (2.0 * d2), (-d1 + sq) / (2.0 * d2)})
                    if (r > 0.0 && r < len) dmin = std::min(dmin, acc + d_at(r));
            }
        } else if (d1 != 0.0) {
            const double r = -d0 / d1;
            if (r > 0.0 && r < len) dmin = std::min(dmin, acc + d_at(r));
        }
        acc += d_at(len);
        dmin = std::min(dmin, acc);
    }
    out.max_violation = std::max(0.0, -dmin);
    out.ok = out.max_violation <= tol * scale && out.mean_gap <= 1e-10 * scale;
    return out;
}

namespace {

double minimal_reject_prob(const Dist& d, double T) {
    if (T <= d.mean()) return 0.0;
    if (T > d.upper()) return 1.0;
    return 1.0 - d.pool_top(T).mass;
}

double maximal_reject_prob(const Dist& d, double T) {
    // At T == mean the feasible pooling masses are {w : superquantile(w)
    // == mean}, a nontrivial plateau for flat-topped distributions.
    if (T < d.mean()) return 0.0;
    if (T > d.upper()) return 1.0;
    return 1.0 - d.pool_top_min(T);
}

double product_of_min_rejects(const Instance& inst, double T) {
    double p = 1.0;
    for (const Dist& d : inst.boxes) {
        p *= minimal_reject_prob(d, T);
        if (p == 0.0) break;
    }
    return p;
}

}  // namespace

InducedThreshold induce_threshold_by_product(const Instance& inst, double P) {
    if (P < 0.0 || P >= 1.0)
        throw std::invalid_argument("induce_threshold_by_product: requires 0 <= P < 1");
    InducedThreshold out;

    const double t_floor = inst.max_mean();
    if (P == 0.0) {
        out.threshold = t_floor;
        for (const Dist& d : inst.boxes)
            out.reject_probs.push_back(minimal_reject_prob(d, t_floor));
        return out;
    }

    double t_at = 0.0;
    const double t_top = inst.max_upper();
    bool landed = false;
    if (product_of_min_rejects(inst, t_top) >= P) {
        // The minimal rejection product is nondecreasing in T and crosses
        // P inside (t_floor, t_top]; bisect on it.
        double lo = t_floor, hi = t_top;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (product_of_min_rejects(inst, mid) >= P)
                hi = mid;
            else
                lo = mid;
        }
        t_at = hi;
        landed = std::abs(product_of_min_rejects(inst, hi) - P) <= 1e-11;
        if (!landed) {
            // The product jumps across P; jumps can only sit at an atom
            // value or a support top, so snap T to the candidate inside
            // the final bracket.
            const double slack = 1e-9 * (1.0 + hi);
            for (const Dist& d : inst.boxes) {
                for (const Atom& a : d.atoms())
                    if (a.value >= lo - slack && a.value <= hi + slack) t_at = a.value;
                if (d.upper() >= lo - slack && d.upper() <= hi + slack) t_at = d.upper();
            }
        }
    } else {
        t_at = t_top;  // the jump to certain rejection sits just above the top
    }

    const std::size_t m = inst.boxes.size();
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = minimal_reject_prob(inst.boxes[i], t_at);
    if (!landed) {
        // Split the pooling plateau: the lowest-index player with slack
        // absorbs the adjustment; players before it are pushed to their
        // feasible maxima when one player's range cannot cover P alone.
        std::vector<double> caps(m);
        for (std::size_t i = 0; i < m; ++i) {
            caps[i] = std::min(maximal_reject_prob(inst.boxes[i], t_at), 1.0 - 1e-12);
            caps[i] = std::max(caps[i], p[i]);
        }
        std::vector<double> suffix(m + 1, 1.0);
        for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * p[i];
        double done = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double rest = suffix[j + 1];
            if (rest > 0.0) {
                const double needed = P / (done * rest);
                if (needed <= caps[j] + 1e-15) {
                    p[j] = std::clamp(needed, p[j], caps[j]);
                    break;  // later players stay at their minimal rejection
                }
            }
            p[j] = caps[j];
            done *= p[j];
        }
    }
    out.threshold = t_at;
    out.reject_probs = std::move(p);
    return out;
}

}  // namespace prophet
