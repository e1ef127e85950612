#include "rankstat/power_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "rankstat/errors.hpp"
#include "rankstat/normal.hpp"

namespace rankstat {

namespace {

// Beyond this the closed-form seed no longer fits comfortably in an int64 search.
constexpr double kMaxGroupSize = 1e15;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

void check_sizes(std::int64_t n1, std::int64_t n2) {
    if (n1 < 2 || n2 < 2) throw DomainError("group sizes must be at least 2");
}

void check_target(double target_power, double alpha) {
    if (!(target_power > alpha && target_power < 1.0)) {
        throw DomainError("target power must lie in (alpha, 1)");
    }
}

double critical_z(double alpha, Tails tails) {
    return tails == Tails::two_sided ? normal_quantile(1.0 - 0.5 * alpha)
                                     : normal_quantile(1.0 - alpha);
}

}  // namespace

double harmonic_group_size(std::int64_t n1, std::int64_t n2) {
    check_sizes(n1, n2);
    return 2.0 / (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
}

PowerReport power_two_proportions(double h, std::int64_t n1, std::int64_t n2, double alpha,
                                  Tails tails) {
    if (!(h >= 0.0) || std::isinf(h)) throw DomainError("effect size h must be finite and >= 0");
    check_alpha(alpha);
    const double shift = h * std::sqrt(harmonic_group_size(n1, n2) / 2.0);
    const double crit = critical_z(alpha, tails);
    double power = normal_cdf(shift - crit);
    if (tails == Tails::two_sided) power += normal_cdf(-shift - crit);
    return {h, n1, n2, alpha, tails, std::min(power, 1.0)};
}

std::int64_t required_n(double h, double alpha, double target_power, Tails tails) {
    if (h == 0.0) {
        throw UnattainablePowerError("no sample size reaches the target power at h = 0");
    }
    if (!(h > 0.0) || std::isinf(h)) throw DomainError("effect size h must be finite and > 0");
    check_alpha(alpha);
    check_target(target_power, alpha);

    const double zsum = critical_z(alpha, tails) + normal_quantile(target_power);
    const double seed = 2.0 * zsum * zsum / (h * h);
    if (seed > kMaxGroupSize) {
        throw UnattainablePowerError("required group size exceeds 1e15");
    }
    auto reaches = [&](std::int64_t n) {
        return power_two_proportions(h, n, n, alpha, tails).power >= target_power;
    };
    std::int64_t n = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(seed)));
    while (!reaches(n)) ++n;
    while (n > 2 && reaches(n - 1)) --n;
    return n;
}

double minimum_detectable_h(std::int64_t n1, std::int64_t n2, double alpha, double target_power,
                            Tails tails) {
    check_alpha(alpha);
    check_target(target_power, alpha);
    const double zsum = critical_z(alpha, tails) + normal_quantile(target_power);
    return zsum / std::sqrt(harmonic_group_size(n1, n2) / 2.0);
}

}  // namespace rankstat
