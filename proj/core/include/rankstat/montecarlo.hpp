#pragma once

#include <cstdint>

namespace rankstat {

// Trials are split into kPartitions fixed blocks of the trial index space. Each
// block draws from its own std::mt19937_64 seeded by (seed, block index), so the
// rates depend only on (config, seed) and not on the number of worker threads.
struct SimulationConfig {
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    // 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
};

inline constexpr int kPartitions = 64;

// Rejection rate of the two-sided one-sample z test against p_expected when the
// top-10% count is binomial(n, p_true).
double simulate_type1(std::int64_t n, double p_true, double p_expected, double alpha,
                      const SimulationConfig& config);

// Rejection rate of the two-sided pooled two-sample z test with counts drawn from
// binomial(n1, p1) and binomial(n2, p2). Draws with an undefined statistic count
// as non-rejections.
double simulate_power(std::int64_t n1, std::int64_t n2, double p1, double p2, double alpha,
                      const SimulationConfig& config);

// Share of Wald intervals for p1 - p2 that contain the true difference.
double simulate_ci_coverage(std::int64_t n1, std::int64_t n2, double p1, double p2, double level,
                            const SimulationConfig& config);

}  // namespace rankstat
