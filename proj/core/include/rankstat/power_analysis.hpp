#pragma once

#include <cstdint>

#include "rankstat/proportion_tests.hpp"

namespace rankstat {

// Power of the two-proportion z test under the arcsine normal approximation.
// With n' the harmonic mean of n1 and n2, the arcsine difference has standard
// error sqrt(2 / n'), so the noncentrality is h sqrt(n' / 2).
struct PowerReport {
    double h = 0.0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    double alpha = 0.05;
    Tails tails = Tails::two_sided;
    double power = 0.0;
};

// greater and less are treated alike: both are one-sided tests in the direction of h.
PowerReport power_two_proportions(double h, std::int64_t n1, std::int64_t n2, double alpha,
                                  Tails tails = Tails::two_sided);

// Smallest equal per-group n reaching target_power.
// Seeded from the closed form 2 (z_alpha + z_power)^2 / h^2, then searched over integers.
// Throws UnattainablePowerError for h == 0.
std::int64_t required_n(double h, double alpha, double target_power,
                        Tails tails = Tails::two_sided);

// (z_alpha + z_power) / sqrt(n' / 2). Ignores the opposite tail of a two-sided test,
// so power at the returned h overshoots target_power by at most that tail's mass.
double minimum_detectable_h(std::int64_t n1, std::int64_t n2, double alpha, double target_power,
                            Tails tails = Tails::two_sided);

// 2 / (1/n1 + 1/n2).
double harmonic_group_size(std::int64_t n1, std::int64_t n2);

}  // namespace rankstat
