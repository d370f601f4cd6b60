#include "prophet/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace prophet {

double sample(const Dist& d, Rng& rng) { return d.sample(rng.uniform01()); }

namespace {

struct BlockStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> wins;
};

constexpr std::int64_t kBlock = 4096;

BlockStats run_block(const Profile& profile, const std::vector<double>& thresholds,
                     std::uint64_t seed, std::int64_t first, std::int64_t count) {
    const std::size_t n = profile.strategies.size();
    BlockStats st;
    st.wins.assign(n, 0.0);
    bool first_payoff = true;
    for (std::int64_t k = first; k < first + count; ++k) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
        double payoff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = sample(profile.strategies[i], rng);
            if (y >= thresholds[i]) {
                payoff = y;
                st.wins[i] += 1.0;
                break;
            }
        }
        st.sum += payoff;
        st.sum_sq += payoff * payoff;
        st.lo = first_payoff ? payoff : std::min(st.lo, payoff);
        st.hi = first_payoff ? payoff : std::max(st.hi, payoff);
        first_payoff = false;
    }
    return st;
}

}  // namespace

SimResult simulate(const Policy& policy, const Profile& profile, const SimConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("simulate: samples must be >= 1");
    const std::vector<double> thresholds = policy_thresholds(policy, profile);
    const std::size_t n = profile.strategies.size();
    if (thresholds.size() != n) throw std::invalid_argument("simulate: bad profile");

    const std::int64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
    std::vector<BlockStats> per_block(static_cast<std::size_t>(blocks));

    auto work = [&](std::int64_t b0, std::int64_t stride) {
        for (std::int64_t b = b0; b < blocks; b += stride) {
            const std::int64_t first = b * kBlock;
            const std::int64_t count = std::min<std::int64_t>(kBlock, cfg.samples - first);
            per_block[static_cast<std::size_t>(b)] =
                run_block(profile, thresholds, cfg.seed, first, count);
        }
    };

    const int streams = std::max(1, cfg.parallel_streams);
    if (streams == 1 || blocks == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(streams));
        for (int s = 0; s < streams; ++s) pool.emplace_back(work, s, streams);
        for (auto& t : pool) t.join();
    }

    // Combine in block order: results do not depend on the stream count.
    double sum = 0.0, sum_sq = 0.0;
    double lo = per_block.front().lo, hi = per_block.front().hi;
    std::vector<double> wins(n, 0.0);
    for (const BlockStats& st : per_block) {
        sum += st.sum;
        sum_sq += st.sum_sq;
        lo = std::min(lo, st.lo);
        hi = std::max(hi, st.hi);
        for (std::size_t i = 0; i < n; ++i) wins[i] += st.wins[i];
    }

    SimResult out;
    out.samples = cfg.samples;
    const double m = static_cast<double>(cfg.samples);
    out.payoff_mean = sum / m;
    // lo == hi means a degenerate payoff; the cancellation in the
    // variance formula would otherwise leave fp dust there.
    if (cfg.samples > 1 && hi > lo) {
        const double var = std::max(0.0, (sum_sq - sum * sum / m) / (m - 1.0));
        out.payoff_stderr = std::sqrt(var / m);
    }
    out.win_freqs.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.win_freqs[i] = wins[i] / m;
    return out;
}

}  // namespace prophet
