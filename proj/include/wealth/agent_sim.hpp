#pragma once

// Discrete random-market gas: N agents, random pairs (i, j) pool their money
// and split it with a uniform fraction eps in (0, 1):
//   m_i' = eps (m_i + m_j),  m_j' = (1 - eps)(m_i + m_j).
// One operator step corresponds roughly to N/2 such transactions.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "wealth/grid.hpp"

namespace wealth {

/// xoshiro256** (Blackman & Vigna), seeded through splitmix64. jump()
/// advances by 2^128 draws, giving non-overlapping streams for replicas.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double on the open interval (0, 1), 53-bit resolution.
    double uniform_open01();

    /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift
    /// with rejection).
    std::uint64_t bounded(std::uint64_t bound);

    void jump();

    /// Independent stream for replica `index` of a run seeded with `seed`.
    static Xoshiro256 stream(std::uint64_t seed, std::uint64_t index);

    const std::array<std::uint64_t, 4>& state() const { return s_; }

private:
    std::array<std::uint64_t, 4> s_;
};

class AgentEnsemble {
public:
    static AgentEnsemble equal(std::size_t n_agents, double m0, std::uint64_t seed);

    /// Inverse-CDF sampling of the piecewise-linear interpolant of `density`.
    static AgentEnsemble from_density(std::size_t n_agents, const Density& density, std::uint64_t seed);

    /// Runs `count` random transactions.
    void run_transactions(std::uint64_t count);

    /// A single transaction with a given split fraction eps in (0, 1).
    void exchange(std::size_t i, std::size_t j, double eps);

    const std::vector<double>& money() const { return money_; }
    std::size_t size() const { return money_.size(); }
    double total() const { return total_; }
    /// Compensated sum of the current holdings.
    double current_total() const;
    std::uint64_t seed() const { return seed_; }
    std::uint64_t transactions_done() const { return transactions_done_; }

private:
    AgentEnsemble(std::vector<double> money, std::uint64_t seed);

    std::vector<double> money_;
    double total_;
    std::uint64_t seed_;
    std::uint64_t transactions_done_ = 0;
    Xoshiro256 rng_;
};

AgentEnsemble run_transactions(AgentEnsemble ensemble, std::uint64_t count);

struct HistogramEstimate {
    std::vector<double> bin_edges;
    std::vector<double> densities;
    std::size_t n_samples = 0;
    std::size_t overflow = 0;

    double bin_width() const { return bin_edges[1] - bin_edges[0]; }
};

/// Uniform bins on [0, m_max]; agents above m_max are counted in `overflow`
/// and still enter the normalisation.
HistogramEstimate histogram(const AgentEnsemble& ensemble, std::size_t n_bins, double m_max);

struct ExponentialFit {
    double beta_hat = 0.0;
    double ks_statistic = 0.0;
    std::size_t n_samples = 0;
};

/// beta_hat = N / sum(m), the maximum-likelihood rate; KS distance to
/// 1 - exp(-beta_hat m).
ExponentialFit fit_exponential(const AgentEnsemble& ensemble);
ExponentialFit fit_exponential(std::vector<double> money);

/// L1 distance between a histogram and a density on the same money axis.
/// Each bin is compared with the mass of the density's linear interpolant
/// over that bin; the mismatch of the mass beyond m_max is added.
double histogram_l1_distance(const HistogramEstimate& hist, const Density& density);

}  // namespace wealth
