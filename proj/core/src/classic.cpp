#include "prophet/classic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prophet/numeric.hpp"

namespace prophet {

namespace {

// Slack on probability-one-half comparisons in the median scans; the
// product of CDFs can miss an exact 1/2 by a few ulps.
constexpr double kHalfSlack = 1e-12;

// P(max >= c): left limits of every CDF.
double survival_at(const Instance& inst, double c) {
    double p = 1.0;
    for (const Dist& d : inst.boxes) {
        p *= d.cdf_left(c);
        if (p == 0.0) break;
    }
    return 1.0 - p;
}

// lim_{t -> c+} P(max >= t): right-continuous CDFs.
double survival_after(const Instance& inst, double c) {
    double p = 1.0;
    for (const Dist& d : inst.boxes) {
        p *= d.cdf(c);
        if (p == 0.0) break;
    }
    return 1.0 - p;
}

}  // namespace

Instance::Instance(std::vector<Dist> b) : boxes(std::move(b)) {
    if (boxes.empty()) throw std::invalid_argument("Instance: needs at least one box");
}

Instance Instance::iid(const Dist& d, int n) {
    if (n < 1) throw std::invalid_argument("Instance::iid: n must be >= 1");
    return Instance(std::vector<Dist>(static_cast<std::size_t>(n), d));
}

double Instance::max_upper() const {
    double u = 0.0;
    for (const Dist& d : boxes) u = std::max(u, d.upper());
    return u;
}

double Instance::max_mean() const {
    double m = 0.0;
    for (const Dist& d : boxes) m = std::max(m, d.mean());
    return m;
}

std::vector<double> Instance::means() const {
    std::vector<double> out;
    out.reserve(boxes.size());
    for (const Dist& d : boxes) out.push_back(d.mean());
    return out;
}

double expected_max(const Instance& inst) {
    const double top = inst.max_upper();
    if (top <= 0.0) return 0.0;
    std::vector<const Dist*> ptrs;
    ptrs.reserve(inst.boxes.size());
    for (const Dist& d : inst.boxes) ptrs.push_back(&d);
    const std::vector<double> pts = merged_breakpoints(ptrs, top);

    auto integrand = [&](double x) {
        double p = 1.0;
        for (const Dist& d : inst.boxes) {
            p *= d.cdf(x);
            if (p == 0.0) break;
        }
        return 1.0 - p;
    };

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double a = pts[k], b = pts[k + 1];
        if (b <= a) continue;
        // The product CDF on this cell is a polynomial of degree two per
        // box with density here; pick the Gauss rule that is exact.
        const double mid = 0.5 * (a + b);
        int degree = 0;
        for (const Dist& d : inst.boxes)
            if (d.has_density_at(mid)) degree += 2;
        total += gauss_integrate(integrand, a, b, degree / 2 + 1);
    }
    return total;
}

double median_of_max(const Instance& inst) {
    const double top = inst.max_upper();
    std::vector<const Dist*> ptrs;
    for (const Dist& d : inst.boxes) ptrs.push_back(&d);
    const std::vector<double> pts = merged_breakpoints(ptrs, top);

    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double x = pts[k];
        if (survival_at(inst, x) <= 0.5 + kHalfSlack) return x;    // attained at x
        if (survival_after(inst, x) <= 0.5 + kHalfSlack) return x; // atom jump at x
        if (k + 1 < pts.size()) {
            const double y = pts[k + 1];
            // Survival is continuous and decreasing strictly inside the
            // cell; a crossing before y is located by bisection.
            if (survival_at(inst, y) < 0.5 - kHalfSlack)
                return bisect([&](double z) { return survival_at(inst, z) - 0.5; }, x, y);
        }
    }
    return top;
}

double t_star(const Instance& inst) {
    double sum_means = 0.0;
    for (const Dist& d : inst.boxes) sum_means += d.mean();
    if (sum_means <= 0.0) return 0.0;
    auto phi = [&](double T) {
        double s = 0.0;
        for (const Dist& d : inst.boxes) s += d.excess(T);
        return s - T;
    };
    const double hi = sum_means + inst.max_upper();
    return bisect(phi, 0.0, hi, 1e-11);
}

ThresholdSpectrum spectrum(const Instance& inst) {
    ThresholdSpectrum sp;
    sp.t_kw = 0.5 * expected_max(inst);
    sp.t_star = t_star(inst);
    sp.median_lower = median_of_max(inst);

    // t_sc = sup{t : P(max >= t) >= 1/2}: scan the breakpoint grid from
    // the top; inside a cell the survival is continuous and decreasing.
    const double top = inst.max_upper();
    std::vector<const Dist*> ptrs;
    for (const Dist& d : inst.boxes) ptrs.push_back(&d);
    const std::vector<double> pts = merged_breakpoints(ptrs, top);
    sp.t_sc = 0.0;
    for (std::size_t k = pts.size(); k-- > 0;) {
        const double x = pts[k];
        if (survival_at(inst, x) >= 0.5 - kHalfSlack) {
            sp.t_sc = x;
            break;
        }
        if (k > 0) {
            const double a = pts[k - 1];
            if (survival_after(inst, a) >= 0.5 - kHalfSlack &&
                survival_at(inst, x) < 0.5 - kHalfSlack) {
                sp.t_sc = bisect([&](double z) { return survival_at(inst, z) - 0.5; }, a, x);
                break;
            }
        }
    }
    return sp;
}

double nonstrategic_payoff(const Instance& inst, double T) {
    if (T < 0.0) throw std::invalid_argument("nonstrategic_payoff: negative threshold");
    double reach = 1.0;
    double total = 0.0;
    for (const Dist& d : inst.boxes) {
        total += reach * d.upper_tail_value(T, true);
        reach *= d.cdf_left(T);
        if (reach == 0.0) break;
    }
    return total;
}

std::vector<double> dp_values(const Instance& inst) {
    const int n = inst.size();
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        const Dist& d = inst.boxes[static_cast<std::size_t>(i)];
        const double cont = v[static_cast<std::size_t>(i) + 1];
        v[static_cast<std::size_t>(i)] =
            cont * d.cdf_left(cont) + d.upper_tail_value(cont, true);
    }
    return v;
}

std::vector<double> dp_thresholds(const Instance& inst) {
    std::vector<double> v = dp_values(inst);
    return {v.begin() + 1, v.end()};
}

double nonstrategic_dp_payoff(const Instance& inst) { return dp_values(inst).front(); }

}  // namespace prophet
