#include "prophet/dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "prophet/numeric.hpp"

namespace prophet {

namespace {

constexpr double kDropMass = 1e-15;

double stable_quadratic_cut(double linear, double slope, double mass) {
    // Smallest nonnegative t with linear * t + slope * t^2 / 2 == mass.
    double disc = linear * linear + 2.0 * slope * mass;
    if (disc < 0.0) disc = 0.0;
    double denom = linear + std::sqrt(disc);
    if (denom <= 0.0) {
        if (slope > 0.0) return std::sqrt(2.0 * mass / slope);
        return 0.0;
    }
    return 2.0 * mass / denom;
}

}  // namespace

double Segment::mass_between(double u, double v) const {
    if (v <= u) return 0.0;
    const double s = slope();
    const double du = u - lo, dv = v - lo;
    return f_lo * (v - u) + 0.5 * s * (dv * dv - du * du);
}

double Segment::moment_between(double u, double v) const {
    if (v <= u) return 0.0;
    const double s = slope();
    const double v2 = v * v - u * u;
    const double v3 = v * v * v - u * u * u;
    return 0.5 * f_lo * v2 + s * (v3 / 3.0 - 0.5 * lo * v2);
}

double Segment::cut_from_top(double tail) const {
    if (tail <= 0.0) return hi;
    if (tail >= mass()) return lo;
    const double s = slope();
    double r = stable_quadratic_cut(f_hi, -s, tail);
    r = std::clamp(r, 0.0, width());
    return hi - r;
}

double Segment::cut_from_bottom(double head) const {
    if (head <= 0.0) return lo;
    if (head >= mass()) return hi;
    const double s = slope();
    double t = stable_quadratic_cut(f_lo, s, head);
    t = std::clamp(t, 0.0, width());
    return lo + t;
}

Dist::Dist(std::vector<Atom> atoms, std::vector<Segment> segments, bool normalize)
    : atoms_(std::move(atoms)), segments_(std::move(segments)) {
    // Scrub and sort raw pieces.
    for (auto& a : atoms_) {
        if (a.value < 0.0 && a.value > -kMassTol) a.value = 0.0;
    }
    for (auto& s : segments_) {
        if (s.f_lo < 0.0 && s.f_lo > -1e-9) s.f_lo = 0.0;
        if (s.f_hi < 0.0 && s.f_hi > -1e-9) s.f_hi = 0.0;
    }
    std::erase_if(atoms_, [](const Atom& a) { return a.mass <= kDropMass; });
    std::erase_if(segments_, [](const Segment& s) {
        return s.width() <= 0.0 || s.mass() <= kDropMass;
    });
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    std::sort(segments_.begin(), segments_.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });

    // Merge coincident atoms.
    std::vector<Atom> merged;
    for (const Atom& a : atoms_) {
        if (!merged.empty() && a.value == merged.back().value)
            merged.back().mass += a.mass;
        else
            merged.push_back(a);
    }
    atoms_ = std::move(merged);

    // Split segments at interior atom positions so that atoms only ever
    // sit at segment endpoints.
    std::vector<Segment> split;
    for (const Segment& s : segments_) {
        double at = s.lo;
        double f_at = s.f_lo;
        for (const Atom& a : atoms_) {
            if (a.value <= at || a.value >= s.hi) continue;
            double f_mid = s.density_at(a.value);
            split.push_back({at, a.value, f_at, f_mid});
            at = a.value;
            f_at = f_mid;
        }
        split.push_back({at, s.hi, f_at, s.f_hi});
    }
    segments_ = std::move(split);
    std::erase_if(segments_, [](const Segment& s) {
        return s.width() <= 0.0 || s.mass() <= kDropMass;
    });

    build_pieces();
    if (normalize && total_mass_ > 0.0 && std::abs(total_mass_ - 1.0) > kMassTol) {
        const double inv = 1.0 / total_mass_;
        for (auto& a : atoms_) a.mass *= inv;
        for (auto& s : segments_) {
            s.f_lo *= inv;
            s.f_hi *= inv;
        }
        build_pieces();
    }
    validate();
}

void Dist::build_pieces() {
    pieces_.clear();
    pieces_.reserve(atoms_.size() + segments_.size());
    for (const Atom& a : atoms_)
        pieces_.push_back({a.value, a.value, a.mass, a.value * a.mass, true, -1, 0.0, 0.0});
    for (int i = 0; i < static_cast<int>(segments_.size()); ++i) {
        const Segment& s = segments_[i];
        pieces_.push_back({s.lo, s.hi, s.mass(), s.moment_between(s.lo, s.hi), false, i, 0.0, 0.0});
    }
    // Ascending by position; an atom at a shared point precedes the
    // segment that starts there and follows the one that ends there.
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.atom && !b.atom;
    });
    double cm = 0.0, cv = 0.0;
    for (auto& p : pieces_) {
        cm += p.mass;
        cv += p.moment;
        p.cum_mass = cm;
        p.cum_moment = cv;
    }
    total_mass_ = cm;
    mean_ = cv;  // total mass is 1 after validation
    lower_ = pieces_.empty() ? 0.0 : pieces_.front().lo;
    upper_ = 0.0;
    for (const auto& p : pieces_) upper_ = std::max(upper_, p.hi);
}

void Dist::validate() const {
    if (pieces_.empty()) throw std::invalid_argument("Dist: no probability mass");
    if (std::abs(total_mass_ - 1.0) > kMassTol) {
        std::ostringstream os;
        os << "Dist: total mass " << total_mass_ << " is not 1";
        throw std::invalid_argument(os.str());
    }
    if (lower_ < -kMassTol) throw std::invalid_argument("Dist: negative support");
    for (const Atom& a : atoms_)
        if (a.mass < 0.0) throw std::invalid_argument("Dist: negative atom mass");
    for (const Segment& s : segments_)
        if (s.f_lo < 0.0 || s.f_hi < 0.0)
            throw std::invalid_argument("Dist: negative density");
    for (std::size_t i = 1; i < segments_.size(); ++i)
        if (segments_[i].lo < segments_[i - 1].hi - kMassTol)
            throw std::invalid_argument("Dist: overlapping segments");
}

Dist Dist::point(double v) { return Dist({{v, 1.0}}, {}); }

Dist Dist::uniform(double a, double b) {
    if (b <= a) throw std::invalid_argument("uniform: requires a < b");
    const double f = 1.0 / (b - a);
    return Dist({}, {{a, b, f, f}});
}

Dist Dist::discrete(std::vector<std::pair<double, double>> value_mass) {
    std::vector<Atom> atoms;
    atoms.reserve(value_mass.size());
    for (auto& [v, p] : value_mass) atoms.push_back({v, p});
    return Dist(std::move(atoms), {});
}

Dist Dist::two_point(double lo, double hi, double mean) {
    if (!(lo <= mean && mean <= hi) || hi <= lo)
        throw std::invalid_argument("two_point: mean outside [lo, hi]");
    const double p_hi = (mean - lo) / (hi - lo);
    return Dist({{lo, 1.0 - p_hi}, {hi, p_hi}}, {});
}

Dist Dist::linear(double lo, double hi, double f_lo, double f_hi) {
    return Dist({}, {{lo, hi, f_lo, f_hi}});
}

Dist Dist::mixture(const std::vector<double>& weights, const std::vector<Dist>& components) {
    if (weights.size() != components.size() || components.empty())
        throw std::invalid_argument("mixture: weights/components size mismatch");
    std::vector<Atom> atoms;
    std::vector<Segment> scaled;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const double w = weights[i];
        if (w < 0.0) throw std::invalid_argument("mixture: negative weight");
        if (w == 0.0) continue;
        for (const Atom& a : components[i].atoms()) atoms.push_back({a.value, w * a.mass});
        for (const Segment& s : components[i].segments())
            scaled.push_back({s.lo, s.hi, w * s.f_lo, w * s.f_hi});
    }
    // Components may overlap; rebuild non-overlapping segments over the
    // union grid, summing the (linear) densities on each cell.
    std::vector<double> cuts;
    for (const Segment& s : scaled) {
        cuts.push_back(s.lo);
        cuts.push_back(s.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Segment> flat;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double u = cuts[k], v = cuts[k + 1];
        double fu = 0.0, fv = 0.0;
        for (const Segment& s : scaled) {
            if (s.lo <= u && v <= s.hi) {
                fu += s.density_at(u);
                fv += s.density_at(v);
            }
        }
        if (fu > 0.0 || fv > 0.0) flat.push_back({u, v, fu, fv});
    }
    return Dist(std::move(atoms), std::move(flat));
}

std::size_t Dist::first_piece_above(double x, bool strict) const {
    // First index whose lo exceeds x (or reaches it, when strict mode
    // treats lo == x as above).
    return std::partition_point(pieces_.begin(), pieces_.end(),
                                [&](const Piece& p) {
                                    return strict ? p.lo < x : p.lo <= x;
                                }) -
           pieces_.begin();
}

double Dist::cdf(double x) const {
    if (pieces_.empty() || x < lower_) return 0.0;
    const std::size_t idx = first_piece_above(x, false);
    double c = idx == 0 ? 0.0 : pieces_[idx - 1].cum_mass;
    // Walk back over pieces straddling x (at most a segment plus the
    // pieces ending exactly at x).
    for (std::size_t i = idx; i-- > 0;) {
        const auto& p = pieces_[i];
        if (p.hi <= x) break;
        if (!p.atom) c -= segments_[p.segment_index].mass_between(x, p.hi);
    }
    return c;
}

double Dist::cdf_left(double x) const {
    if (pieces_.empty() || x <= lower_) return 0.0;
    const std::size_t idx = first_piece_above(x, true);
    double c = idx == 0 ? 0.0 : pieces_[idx - 1].cum_mass;
    for (std::size_t i = idx; i-- > 0;) {
        const auto& p = pieces_[i];
        if (p.hi < x) break;
        if (!p.atom && p.hi > x) c -= segments_[p.segment_index].mass_between(x, p.hi);
    }
    return c;
}

double Dist::atom_mass_at(double x) const {
    auto it = std::partition_point(atoms_.begin(), atoms_.end(),
                                   [&](const Atom& a) { return a.value < x; });
    if (it != atoms_.end() && it->value == x) return it->mass;
    return 0.0;
}

const Segment* Dist::segment_at(double x) const {
    auto it = std::partition_point(segments_.begin(), segments_.end(),
                                   [&](const Segment& s) { return s.hi <= x; });
    if (it != segments_.end() && it->lo < x && x < it->hi) return &*it;
    return nullptr;
}

double Dist::upper_tail_value(double t, bool include_atom) const {
    if (pieces_.empty()) return 0.0;
    const std::size_t idx = first_piece_above(t, false);
    const double total = pieces_.back().cum_moment;
    double v = idx == 0 ? total : total - pieces_[idx - 1].cum_moment;
    for (std::size_t i = idx; i-- > 0;) {
        const auto& p = pieces_[i];
        if (p.hi < t) break;
        if (p.atom) {
            if (include_atom && p.lo == t) v += p.moment;
        } else if (p.hi > t) {
            v += segments_[p.segment_index].moment_between(std::max(t, p.lo), p.hi);
        }
    }
    return v;
}

double Dist::upper_tail_mass(double t, bool include_atom) const {
    if (pieces_.empty()) return 0.0;
    const std::size_t idx = first_piece_above(t, false);
    const double total = pieces_.back().cum_mass;
    double m = idx == 0 ? total : total - pieces_[idx - 1].cum_mass;
    for (std::size_t i = idx; i-- > 0;) {
        const auto& p = pieces_[i];
        if (p.hi < t) break;
        if (p.atom) {
            if (include_atom && p.lo == t) m += p.mass;
        } else if (p.hi > t) {
            m += segments_[p.segment_index].mass_between(std::max(t, p.lo), p.hi);
        }
    }
    return m;
}

double Dist::excess(double t) const {
    return upper_tail_value(t, true) - t * upper_tail_mass(t, true);
}

std::size_t Dist::piece_for_cum(double u) const {
    std::size_t lo = 0, hi = pieces_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (pieces_[mid].cum_mass >= u)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

double Dist::superquantile(double w) const {
    if (w <= 0.0) throw std::invalid_argument("superquantile: w must be positive");
    if (w > 1.0 + kMassTol) throw std::invalid_argument("superquantile: w must be <= 1");
    if (w >= 1.0 - kMassTol) return mean_;

    // Piece containing the cut, counting mass from the top.
    const std::size_t j = piece_for_cum(total_mass_ - w);
    const auto& p = pieces_[j];
    const double mass_above = total_mass_ - p.cum_mass;      // strictly above piece j
    const double value_above = pieces_.back().cum_moment - p.cum_moment;
    const double r = w - mass_above;                          // taken from piece j
    double v = value_above;
    if (p.atom) {
        v += r * p.lo;
    } else {
        const Segment& s = segments_[p.segment_index];
        const double z = s.cut_from_top(r);
        v += s.moment_between(z, s.hi);
    }
    return v / w;
}

double Dist::quantile(double u) const {
    if (u <= 0.0) return lower_;
    if (u >= total_mass_) return upper_;
    const std::size_t j = piece_for_cum(u);
    const auto& p = pieces_[j];
    if (p.atom) return p.lo;
    const Segment& s = segments_[p.segment_index];
    const double before = p.cum_mass - p.mass;
    return s.cut_from_bottom(u - before);
}

double Dist::lower_median() const { return quantile(0.5); }

ConditionalSplit Dist::conditional_split(double t) const {
    const double ml = cdf_left(t);
    if (ml <= 0.0 || ml >= 1.0)
        throw std::invalid_argument("conditional_split: t outside the support interior");
    const double above_v = upper_tail_value(t, true);
    ConditionalSplit out;
    out.mass_below = ml;
    out.below_mean = (mean_ - above_v) / ml;
    out.above_mean = above_v / (1.0 - ml);
    return out;
}

double Dist::sample(double u) const {
    return quantile(u * total_mass_);
}

Dist::TopPool Dist::pool_top_impl(double target_mean, bool maximal) const {
    const double T = target_mean;
    const double eps = 1e-12 * (1.0 + std::abs(T));
    // Scan pieces from the top maintaining g = pooled value - T * pooled
    // mass; the pooled mean stays >= T exactly while g >= 0.
    double g = 0.0, w = 0.0;
    int last_full = -1;
    for (std::size_t i = pieces_.size(); i-- > 0;) {
        const auto& p = pieces_[i];
        const double g_full = g + p.moment - T * p.mass;
        const bool take = maximal ? (g_full >= -eps) : (g_full > eps);
        if (take) {
            g = g_full;
            w += p.mass;
            last_full = static_cast<int>(i);
            continue;
        }
        if (g <= eps) {
            // The running pooled mean already sits at the target. A
            // segment reaching above T can still extend the pool; an
            // atom below T (or any piece, for the minimal variant)
            // cannot, so the pool ends at the boundary above piece i and
            // the cutoff is the bottom edge of the pooled region.
            const bool can_extend = maximal && !p.atom && p.hi > T;
            if (!can_extend) {
                if (last_full >= 0) {
                    const auto& q = pieces_[last_full];
                    return {w, q.lo, q.atom ? q.mass : 0.0};
                }
                return {0.0, p.hi, 0.0};
            }
        }
        if (p.atom) {
            // v < T here, otherwise the full piece would have been taken.
            double q = g / (T - p.lo);
            q = std::clamp(q, 0.0, p.mass);
            return {w + q, p.lo, q};
        }
        const Segment& s = segments_[p.segment_index];
        const double g0 = std::max(g, 0.0);
        const double b = std::min(T, s.hi);
        auto h = [&](double z) {
            return g0 + s.moment_between(z, s.hi) - T * s.mass_between(z, s.hi);
        };
        const double z = bisect(h, s.lo, b);
        return {w + s.mass_between(z, s.hi), z, 0.0};
    }
    // Everything pooled: the target mean matches the overall mean.
    const auto& bottom = pieces_.front();
    return {w, bottom.lo, bottom.atom ? bottom.mass : 0.0};
}

Dist::TopPool Dist::pool_top(double target_mean) const {
    return pool_top_impl(target_mean, true);
}

double Dist::pool_top_min(double target_mean) const {
    return pool_top_impl(target_mean, false).mass;
}

std::string Dist::describe() const {
    std::ostringstream os;
    os << "Dist(";
    bool first = true;
    for (const Atom& a : atoms_) {
        if (!first) os << ", ";
        os << "atom " << a.value << ":" << a.mass;
        first = false;
    }
    for (const Segment& s : segments_) {
        if (!first) os << ", ";
        os << "seg [" << s.lo << "," << s.hi << "] f=" << s.f_lo << ".." << s.f_hi;
        first = false;
    }
    os << ")";
    return os.str();
}

std::vector<double> merged_breakpoints(const std::vector<const Dist*>& dists, double top) {
    std::vector<double> pts{0.0, top};
    for (const Dist* d : dists) {
        for (const Atom& a : d->atoms()) pts.push_back(a.value);
        for (const Segment& s : d->segments()) {
            pts.push_back(s.lo);
            pts.push_back(s.hi);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::erase_if(pts, [top](double x) { return x < 0.0 || x > top; });
    return pts;
}

}  // namespace prophet
