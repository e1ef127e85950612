#pragma once

namespace rankstat {

// Standard normal CDF. Absolute error below 1e-12 on |z| <= 8.
// Throws DomainError for NaN or infinite input.
double normal_cdf(double z);

// Upper tail 1 - Phi(z), evaluated without cancellation.
double normal_sf(double z);

// Inverse of normal_cdf on (0, 1) (Wichura AS 241, refined by one Newton step).
double normal_quantile(double p);

}  // namespace rankstat
