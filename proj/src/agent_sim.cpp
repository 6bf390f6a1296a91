#include "wealth/agent_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace wealth {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double neumaier_sum(const std::vector<double>& v) {
    double sum = 0.0;
    double c = 0.0;
    for (double x : v) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) word = splitmix64(x);
}

Xoshiro256::result_type Xoshiro256::operator()() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform_open01() {
    for (;;) {
        const double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

__extension__ typedef unsigned __int128 uint128;

std::uint64_t Xoshiro256::bounded(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded() needs a positive bound");
    uint128 m = static_cast<uint128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<uint128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

void Xoshiro256::jump() {
    static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                              0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (int k = 0; k < 4; ++k) acc[k] ^= s_[k];
            }
            (*this)();
        }
    }
    s_ = acc;
}

Xoshiro256 Xoshiro256::stream(std::uint64_t seed, std::uint64_t index) {
    Xoshiro256 rng(seed);
    for (std::uint64_t i = 0; i < index; ++i) rng.jump();
    return rng;
}

AgentEnsemble::AgentEnsemble(std::vector<double> money, std::uint64_t seed)
    : money_(std::move(money)), total_(neumaier_sum(money_)), seed_(seed), rng_(seed) {}

AgentEnsemble AgentEnsemble::equal(std::size_t n_agents, double m0, std::uint64_t seed) {
    if (n_agents < 2) throw std::invalid_argument("an ensemble needs at least 2 agents");
    if (!(m0 > 0.0) || !std::isfinite(m0)) throw std::invalid_argument("initial money must be > 0");
    return AgentEnsemble(std::vector<double>(n_agents, m0), seed);
}

AgentEnsemble AgentEnsemble::from_density(std::size_t n_agents, const Density& density, std::uint64_t seed) {
    if (n_agents < 2) throw std::invalid_argument("an ensemble needs at least 2 agents");
    const auto x = density.grid().nodes();
    const auto y = density.values();
    const double h = density.grid().spacing();

    // Cell masses of the linear interpolant (trapezoid per cell).
    std::vector<double> cdf(y.size(), 0.0);
    for (std::size_t i = 1; i < y.size(); ++i) cdf[i] = cdf[i - 1] + 0.5 * h * (y[i - 1] + y[i]);
    const double mass = cdf.back();
    if (!(mass > 0.0)) throw DegenerateInput("cannot sample agents from a density with zero norm");

    // Sampling draws come from a stream distinct from the trading stream.
    Xoshiro256 rng = Xoshiro256::stream(seed, 1);
    std::vector<double> money(n_agents);
    for (double& m : money) {
        const double target = rng.uniform_open01() * mass;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        std::size_t cell = static_cast<std::size_t>(std::distance(cdf.begin(), it));
        cell = std::clamp<std::size_t>(cell, 1, y.size() - 1) - 1;
        // Solve for t in [0, h]: y0 t + (y1 - y0) t^2 / (2h) = remaining.
        const double remaining = target - cdf[cell];
        const double y0 = y[cell];
        const double slope = (y[cell + 1] - y0) / h;
        double t;
        if (std::fabs(slope) < 1e-14 * std::max(y0, 1e-300)) {
            t = y0 > 0.0 ? remaining / y0 : 0.5 * h;
        } else {
            const double disc = std::max(0.0, y0 * y0 + 2.0 * slope * remaining);
            t = 2.0 * remaining / (y0 + std::sqrt(disc));
        }
        m = x[cell] + std::clamp(t, 0.0, h);
    }
    return AgentEnsemble(std::move(money), seed);
}

void AgentEnsemble::exchange(std::size_t i, std::size_t j, double eps) {
    if (i == j || i >= money_.size() || j >= money_.size()) {
        throw std::invalid_argument("exchange needs two distinct agents");
    }
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("split fraction must lie in (0, 1)");
    const double pooled = money_[i] + money_[j];
    money_[i] = eps * pooled;
    money_[j] = pooled - money_[i];
    ++transactions_done_;
}

void AgentEnsemble::run_transactions(std::uint64_t count) {
    const std::uint64_t n = money_.size();
    for (std::uint64_t t = 0; t < count; ++t) {
        const std::uint64_t i = rng_.bounded(n);
        std::uint64_t j = rng_.bounded(n - 1);
        if (j >= i) ++j;
        const double eps = rng_.uniform_open01();
        const double pooled = money_[i] + money_[j];
        money_[i] = eps * pooled;
        money_[j] = pooled - money_[i];
    }
    transactions_done_ += count;
}

double AgentEnsemble::current_total() const { return neumaier_sum(money_); }

AgentEnsemble run_transactions(AgentEnsemble ensemble, std::uint64_t count) {
    ensemble.run_transactions(count);
    return ensemble;
}

HistogramEstimate histogram(const AgentEnsemble& ensemble, std::size_t n_bins, double m_max) {
    if (n_bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
    if (!(m_max > 0.0)) throw std::invalid_argument("histogram range must be > 0");
    HistogramEstimate h;
    h.bin_edges.resize(n_bins + 1);
    const double width = m_max / static_cast<double>(n_bins);
    for (std::size_t b = 0; b <= n_bins; ++b) h.bin_edges[b] = static_cast<double>(b) * width;
    h.bin_edges.back() = m_max;

    std::vector<std::size_t> counts(n_bins, 0);
    for (double m : ensemble.money()) {
        if (m > m_max) {
            ++h.overflow;
            continue;
        }
        auto b = static_cast<std::size_t>(m / width);
        counts[std::min(b, n_bins - 1)]++;
    }
    h.n_samples = ensemble.size();
    h.densities.resize(n_bins);
    const double norm = static_cast<double>(h.n_samples) * width;
    for (std::size_t b = 0; b < n_bins; ++b) h.densities[b] = static_cast<double>(counts[b]) / norm;
    return h;
}

ExponentialFit fit_exponential(std::vector<double> money) {
    if (money.size() < 2) throw std::invalid_argument("fit needs at least 2 agents");
    const double total = neumaier_sum(money);
    if (!(total > 0.0)) throw DegenerateInput("cannot fit an exponential to an all-zero ensemble");
    ExponentialFit fit;
    fit.n_samples = money.size();
    fit.beta_hat = static_cast<double>(money.size()) / total;

    std::sort(money.begin(), money.end());
    const double n = static_cast<double>(money.size());
    double d = 0.0;
    for (std::size_t i = 0; i < money.size(); ++i) {
        const double cdf = -std::expm1(-fit.beta_hat * money[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
    }
    fit.ks_statistic = d;
    return fit;
}

ExponentialFit fit_exponential(const AgentEnsemble& ensemble) { return fit_exponential(ensemble.money()); }

double histogram_l1_distance(const HistogramEstimate& hist, const Density& density) {
    const Grid& grid = density.grid();
    const double h = grid.spacing();
    std::vector<double> cdf(density.size(), 0.0);
    for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] = cdf[i - 1] + 0.5 * h * (density[i - 1] + density[i]);

    // Integral of the linear interpolant over [0, x]; flat extension past x_max.
    auto primitive = [&](double x) {
        if (x >= grid.x_max()) return cdf.back();
        const auto i = static_cast<std::size_t>(x / h);
        const double t = x - grid.node(i);
        const double slope = (density[i + 1] - density[i]) / h;
        return cdf[i] + density[i] * t + 0.5 * slope * t * t;
    };

    const double width = hist.bin_width();
    double l1 = 0.0;
    for (std::size_t b = 0; b < hist.densities.size(); ++b) {
        const double model_mass = primitive(hist.bin_edges[b + 1]) - primitive(hist.bin_edges[b]);
        l1 += std::fabs(hist.densities[b] * width - model_mass);
    }
    const double m_max = hist.bin_edges.back();
    const double hist_outside = static_cast<double>(hist.overflow) / static_cast<double>(hist.n_samples);
    double density_outside = cdf.back() - primitive(m_max);
    if (m_max <= grid.x_max()) density_outside += tail_mass_estimate(density);
    return l1 + std::fabs(hist_outside - density_outside);
}

}  // namespace wealth
