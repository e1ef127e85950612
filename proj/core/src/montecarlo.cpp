#include "rankstat/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "rankstat/errors.hpp"
#include "rankstat/proportion_tests.hpp"

namespace rankstat {

namespace {

void check_config(const SimulationConfig& config) {
    if (config.trials < 1) throw DomainError("simulation needs at least one trial");
}

void check_proportion(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("true proportions must lie in [0, 1]");
}

void check_size(std::int64_t n) {
    if (n < 1) throw DomainError("simulated sample size must be at least 1");
}

std::mt19937_64 partition_rng(std::uint64_t seed, int partition) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(partition)};
    return std::mt19937_64(seq);
}

// Runs `trial(rng)` config.trials times and returns the fraction that returned true.
template <typename Trial>
double run_partitioned(const SimulationConfig& config, const Trial& trial) {
    check_config(config);
    const std::int64_t trials = config.trials;
    std::vector<std::int64_t> hits(kPartitions, 0);

    auto run_block = [&](int part) {
        const std::int64_t begin = trials * part / kPartitions;
        const std::int64_t end = trials * (part + 1) / kPartitions;
        auto rng = partition_rng(config.seed, part);
        std::int64_t count = 0;
        for (std::int64_t t = begin; t < end; ++t) {
            if (trial(rng)) ++count;
        }
        hits[static_cast<std::size_t>(part)] = count;
    };

    unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
    workers = std::clamp(workers, 1u, static_cast<unsigned>(kPartitions));
    if (workers == 1) {
        for (int part = 0; part < kPartitions; ++part) run_block(part);
    } else {
        std::atomic<int> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int part = next++; part < kPartitions; part = next++) run_block(part);
            });
        }
    }

    std::int64_t total = 0;
    for (auto h : hits) total += h;
    return static_cast<double>(total) / static_cast<double>(trials);
}

}  // namespace

double simulate_type1(std::int64_t n, double p_true, double p_expected, double alpha,
                      const SimulationConfig& config) {
    check_size(n);
    check_proportion(p_true);
    // Validates p_expected and alpha before spending any trials.
    one_sample_z({"", n, 0}, p_expected, alpha);
    return run_partitioned(config, [&](std::mt19937_64& rng) {
        std::binomial_distribution<std::int64_t> draw(n, p_true);
        return one_sample_z({"", n, draw(rng)}, p_expected, alpha).significant;
    });
}

double simulate_power(std::int64_t n1, std::int64_t n2, double p1, double p2, double alpha,
                      const SimulationConfig& config) {
    check_size(n1);
    check_size(n2);
    check_proportion(p1);
    check_proportion(p2);
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    return run_partitioned(config, [&](std::mt19937_64& rng) {
        std::binomial_distribution<std::int64_t> draw1(n1, p1);
        std::binomial_distribution<std::int64_t> draw2(n2, p2);
        const std::int64_t k1 = draw1(rng);
        const std::int64_t k2 = draw2(rng);
        if (k1 + k2 == 0 || k1 + k2 == n1 + n2) return false;
        return two_sample_z({"", n1, k1}, {"", n2, k2}, alpha).significant;
    });
}

double simulate_ci_coverage(std::int64_t n1, std::int64_t n2, double p1, double p2, double level,
                            const SimulationConfig& config) {
    check_size(n1);
    check_size(n2);
    check_proportion(p1);
    check_proportion(p2);
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    const double truth = p1 - p2;
    return run_partitioned(config, [&](std::mt19937_64& rng) {
        std::binomial_distribution<std::int64_t> draw1(n1, p1);
        std::binomial_distribution<std::int64_t> draw2(n2, p2);
        const std::int64_t k1 = draw1(rng);
        const std::int64_t k2 = draw2(rng);
        const auto ci = diff_ci({"", n1, k1}, {"", n2, k2}, level);
        return ci.lower <= truth && truth <= ci.upper;
    });
}

}  // namespace rankstat
