#include "rankstat/normal.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rankstat/errors.hpp"

namespace rankstat {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double check_finite(double z) {
    if (!std::isfinite(z)) {
        throw DomainError("normal distribution argument must be finite");
    }
    return z;
}

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// AS 241 PPND16 coefficients, lowest order first.
constexpr std::array<double, 8> kCentralNum = {
    3.387132872796366608,  133.14166789178437745, 1971.5909503065514427,
    13731.693765509461125, 45921.953931549871457, 67265.770927008700853,
    33430.575583588128105, 2509.0809287301226727};
constexpr std::array<double, 8> kCentralDen = {
    1.0,                   42.313330701600911252, 687.1870074920579083,
    5394.1960214247511077, 21213.794301586595867, 39307.89580009271061,
    28729.085735721942674, 5226.495278852545925};
constexpr std::array<double, 8> kNearNum = {
    1.42343711074968357734,   4.6303378461565452959,    5.7694972214606914055,
    3.64784832476320460504,   1.27045825245236838258,   0.24178072517745061177,
    0.0227238449892691845833, 7.7454501427834140764e-4};
constexpr std::array<double, 8> kNearDen = {
    1.0,                       2.05319162663775882187,    1.6763848301838038494,
    0.68976733498510000455,    0.14810397642748007459,    0.0151986665636164571966,
    5.475938084995344946e-4,   1.05075007164441684324e-9};
constexpr std::array<double, 8> kFarNum = {
    6.6579046435011037772,     5.4637849111641143699,     1.7848265399172913358,
    0.29656057182850489123,    0.026532189526576123093,   0.0012426609473880784386,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr std::array<double, 8> kFarDen = {
    1.0,                        0.59983220655588793769,    0.13692988092273580531,
    0.0148753612908506148525,   7.868691311456132591e-4,   1.8463183175100546818e-5,
    1.4215117583164458887e-7,   2.04426310338993978564e-15};

}  // namespace

double normal_cdf(double z) {
    return 0.5 * std::erfc(-check_finite(z) * kInvSqrt2);
}

double normal_sf(double z) {
    return 0.5 * std::erfc(check_finite(z) * kInvSqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("normal quantile requires a probability in (0, 1)");
    }
    const double q = p - 0.5;
    double x;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        x = q * poly(kCentralNum, r) / poly(kCentralDen, r);
    } else {
        double r = q < 0.0 ? p : 1.0 - p;
        r = std::sqrt(-std::log(r));
        if (r <= 5.0) {
            r -= 1.6;
            x = poly(kNearNum, r) / poly(kNearDen, r);
        } else {
            r -= 5.0;
            x = poly(kFarNum, r) / poly(kFarDen, r);
        }
        if (q < 0.0) x = -x;
    }
    // Newton step against the erfc-based CDF; use the smaller tail to avoid cancellation.
    const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (density > 0.0) {
        const double err = p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - normal_sf(x);
        x -= err / density;
    }
    return x;
}

}  // namespace rankstat
