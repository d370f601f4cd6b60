#include "prophet/strategic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prophet {

namespace {

constexpr double kBoundSlack = 1e-9;

void fill_ratios(RobustnessReport& r) {
    if (r.opt > 0.0) {
        r.ratio_strategic = r.u_strategic / r.opt;
        r.ratio_nonstrategic = r.u_nonstrategic / r.opt;
    } else {
        r.ratio_strategic = 1.0;
        r.ratio_nonstrategic = 1.0;
    }
}

}  // namespace

double strategic_payoff(const Instance& inst, double T) {
    if (T < 0.0) throw std::invalid_argument("strategic_payoff: negative threshold");
    double reach = 1.0;
    double total = 0.0;
    for (const Dist& d : inst.boxes) {
        const PoolingStrategy s = best_response(d, T);
        switch (s.kind) {
            case PoolingStrategy::Kind::NoInformation:
                return total + reach * d.mean();
            case PoolingStrategy::Kind::ThresholdSignaling:
                total += reach * s.accept_prob * T;
                reach *= s.reject_prob();
                break;
            case PoolingStrategy::Kind::AlwaysRejected:
                break;
        }
        if (reach == 0.0) break;
    }
    return total;
}

RobustnessReport robustness_report(const Instance& inst, double T) {
    RobustnessReport r;
    r.threshold = T;
    r.u_strategic = strategic_payoff(inst, T);
    r.u_nonstrategic = nonstrategic_payoff(inst, T);
    r.opt = expected_max(inst);
    fill_ratios(r);
    return r;
}

RobustnessReport check_kw_robustness(const Instance& inst) {
    RobustnessReport r;
    r.opt = expected_max(inst);
    r.threshold = 0.5 * r.opt;
    r.u_strategic = strategic_payoff(inst, r.threshold);
    r.u_nonstrategic = nonstrategic_payoff(inst, r.threshold);
    fill_ratios(r);
    r.bound_strategic = 0.5 * (1.0 - std::exp(-1.0));
    r.bound_nonstrategic = 0.5;
    r.strategic_ok = r.ratio_strategic >= r.bound_strategic - kBoundSlack;
    r.nonstrategic_ok = r.ratio_nonstrategic >= r.bound_nonstrategic - kBoundSlack;
    return r;
}

double opt_upper_bound_cutoffs(const Instance& inst, double T) {
    double bound = 0.0;
    double t_max = 0.0;
    double p_at_max = 0.0;
    for (const Dist& d : inst.boxes) {
        if (T <= d.mean())
            throw std::invalid_argument("opt_upper_bound_cutoffs: T not above every mean");
        const PoolingStrategy s = best_response(d, T);
        double cutoff;
        if (s.kind == PoolingStrategy::Kind::AlwaysRejected) {
            cutoff = d.upper();  // conceding box: X <= upper + (X - upper)^+
        } else {
            cutoff = s.cutoff.value();
        }
        bound += T * s.accept_prob;
        if (cutoff >= t_max) {
            t_max = cutoff;
            p_at_max = s.reject_prob();
        }
    }
    return bound + p_at_max * t_max;
}

RobustnessReport check_iid_robustness(const Dist& d, int n) {
    const Instance inst = Instance::iid(d, n);
    RobustnessReport r = robustness_report(inst, t_star(inst));
    r.bound_strategic = 0.5;
    r.bound_nonstrategic = 0.5;
    r.strategic_ok = r.ratio_strategic >= 0.5 - kBoundSlack;
    r.nonstrategic_ok = r.ratio_nonstrategic >= 0.5 - kBoundSlack;
    return r;
}

RobustnessReport check_iid_deviation_guarantee(const Dist& d, int n) {
    if (n < 2) throw std::invalid_argument("check_iid_deviation_guarantee: n must be >= 2");
    const Instance inst = Instance::iid(d, n);
    const double P = std::pow(1.0 - 1.0 / n, n);
    const InducedThreshold induced = induce_threshold_by_product(inst, P);
    RobustnessReport r = robustness_report(inst, induced.threshold);
    r.bound_strategic = 1.0 - std::exp(-1.0);
    r.strategic_ok = r.ratio_strategic >= r.bound_strategic - kBoundSlack;
    r.bound_nonstrategic = 0.0;
    r.nonstrategic_ok = true;
    return r;
}

Instance make_general_tightness_instance(int n, double eps, double s) {
    if (n < 3 || eps <= 0.0 || eps >= 1.0 || s <= n)
        throw std::invalid_argument("make_general_tightness_instance: bad parameters");
    std::vector<Dist> boxes;
    boxes.push_back(Dist::point(n - 1 - eps));
    for (int i = 1; i < n; ++i)
        boxes.push_back(Dist::discrete({{0.0, 1.0 - 1.0 / s}, {s, 1.0 / s}}));
    return Instance(std::move(boxes));
}

Instance make_iid_tightness_instance(int n, double a1, double a2) {
    if (n < 1 || a1 <= 0.0 || a1 >= 1.0 || a2 <= 0.0)
        throw std::invalid_argument("make_iid_tightness_instance: bad parameters");
    return Instance::iid(Dist::two_point(n - a1, n + a2, n), n);
}

Instance make_percentage_instance(int n) {
    if (n < 2) throw std::invalid_argument("make_percentage_instance: n must be >= 2");
    const double e = std::exp(1.0);
    const double nn = n;
    const double p_top = 1.0 / (nn * nn * nn);
    const double p_one = 1.0 / nn;
    const Dist d = Dist::discrete(
        {{0.0, 1.0 - p_one - p_top}, {1.0, p_one}, {nn / (e - 2.0), p_top}});
    return Instance::iid(d, n * n);
}

TabulatedDensity TabulatedDensity::from_function(double (*f)(double), int points) {
    TabulatedDensity td;
    td.grid.resize(points);
    td.values.resize(points);
    for (int i = 0; i < points; ++i) {
        td.grid[i] = static_cast<double>(i) / (points - 1);
        td.values[i] = f(td.grid[i]);
    }
    return td;
}

void TabulatedDensity::validate() const {
    if (grid.size() < 2 || grid.size() != values.size())
        throw std::invalid_argument("TabulatedDensity: grid/values mismatch");
    if (grid.front() != 0.0 || grid.back() != 1.0)
        throw std::invalid_argument("TabulatedDensity: grid must span [0, 1]");
    const double h = step();
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9)
            throw std::invalid_argument("TabulatedDensity: grid not uniform");
    double mass = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (values[i] < 0.0 || values[i - 1] < 0.0)
            throw std::invalid_argument("TabulatedDensity: negative density");
        mass += 0.5 * (values[i] + values[i - 1]) * h;
    }
    if (std::abs(mass - 1.0) > 1e-6)
        throw std::invalid_argument("TabulatedDensity: density not normalized");
}

Dist TabulatedDensity::to_dist() const {
    validate();
    std::vector<Segment> segs;
    segs.reserve(grid.size() - 1);
    for (std::size_t i = 1; i < grid.size(); ++i)
        segs.push_back({grid[i - 1], grid[i], values[i - 1], values[i]});
    return Dist({}, std::move(segs), /*normalize=*/true);
}

bool LogConcaveReport::ok() const {
    bool all = log_concave_ok && endpoint_value_ok && endpoint_slope_ok &&
               n_condition_ok && product_convex_ok && jensen_ok && spectrum_order_ok;
    for (const Eval& e : evals) all = all && e.ok;
    return all;
}

LogConcaveReport logconcave_robustness_check(const std::vector<TabulatedDensity>& densities,
                                             double alpha, double beta) {
    if (densities.empty())
        throw std::invalid_argument("logconcave_robustness_check: no densities");
    LogConcaveReport rep;
    const std::size_t points = densities.front().grid.size();
    for (const TabulatedDensity& td : densities) {
        if (td.grid.size() < 1024)
            throw std::invalid_argument("logconcave_robustness_check: grid too coarse");
        if (td.grid.size() != points)
            throw std::invalid_argument("logconcave_robustness_check: mismatched grids");
        td.validate();
    }
    const double h = densities.front().step();

    // Family membership: log-concavity by second differences, f(1) and
    // f'(1) endpoint conditions. The 1e-7 slack absorbs discretization
    // of the smooth statement.
    for (const TabulatedDensity& td : densities) {
        for (std::size_t k = 1; k + 1 < points; ++k) {
            const double fm = td.values[k - 1], f0 = td.values[k], fp = td.values[k + 1];
            if (f0 <= 0.0) {
                // A zero strictly inside positive density cannot be
                // log-concave; zeros touching the support edge are fine.
                if (fm > 0.0 && fp > 0.0) {
                    rep.log_concave_ok = false;
                    break;
                }
                continue;
            }
            if (fm <= 0.0 || fp <= 0.0) continue;
            const double d2 = std::log(fp) - 2.0 * std::log(f0) + std::log(fm);
            if (d2 > 1e-7) {
                rep.log_concave_ok = false;
                break;
            }
        }
        if (td.values.back() < alpha - 1e-9) rep.endpoint_value_ok = false;
        const double slope_end = (td.values[points - 1] - td.values[points - 2]) / h;
        if (slope_end < -beta - 1e-9) rep.endpoint_slope_ok = false;
    }
    rep.n_condition_ok =
        static_cast<double>(densities.size()) >= 1.0 + beta / (alpha * alpha) - 1e-12;

    // Convexity of the product CDF on the grid.
    std::vector<double> product_cdf(points, 1.0);
    for (const TabulatedDensity& td : densities) {
        double mass = 0.0;
        for (std::size_t i = 1; i < points; ++i)
            mass += 0.5 * (td.values[i] + td.values[i - 1]) * h;
        double c = 0.0;
        for (std::size_t i = 1; i < points; ++i) {
            c += 0.5 * (td.values[i] + td.values[i - 1]) * h;
            product_cdf[i] *= c / mass;
        }
        product_cdf[0] *= 0.0;
    }
    for (std::size_t k = 1; k + 1 < points; ++k) {
        if (product_cdf[k + 1] - 2.0 * product_cdf[k] + product_cdf[k - 1] < -1e-9) {
            rep.product_convex_ok = false;
            break;
        }
    }

    std::vector<Dist> boxes;
    boxes.reserve(densities.size());
    for (const TabulatedDensity& td : densities) boxes.push_back(td.to_dist());
    const Instance inst(std::move(boxes));
    const ThresholdSpectrum sp = spectrum(inst);
    rep.t_kw = sp.t_kw;
    rep.t_sc = sp.t_sc;
    rep.opt = 2.0 * sp.t_kw;
    double mass_below_opt = 1.0;
    for (const Dist& d : inst.boxes) mass_below_opt *= d.cdf(rep.opt);
    rep.jensen_ok = mass_below_opt <= 0.5 + kBoundSlack;
    rep.spectrum_order_ok = 2.0 * sp.t_kw <= sp.t_sc + kBoundSlack;

    const double lo = 2.0 * sp.t_kw;
    const double hi = sp.t_sc;
    for (double T : {lo, 0.5 * (lo + hi), hi}) {
        LogConcaveReport::Eval ev;
        ev.threshold = T;
        const double opt = rep.opt;
        ev.ratio_strategic = opt > 0.0 ? strategic_payoff(inst, T) / opt : 1.0;
        ev.ratio_nonstrategic = opt > 0.0 ? nonstrategic_payoff(inst, T) / opt : 1.0;
        ev.ok = ev.ratio_strategic >= 0.5 - kBoundSlack &&
                ev.ratio_nonstrategic >= 0.5 - kBoundSlack;
        rep.evals.push_back(ev);
    }
    return rep;
}

}  // namespace prophet
