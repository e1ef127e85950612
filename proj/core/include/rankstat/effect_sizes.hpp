#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "rankstat/proportion_tests.hpp"

namespace rankstat {

enum class EffectMeasure { h, w, v };

// Qualitative effect-size bands, declared in increasing order.
enum class Band {
    trivial,
    small,
    small_to_medium,
    medium,
    medium_to_large,
    large,
};

// Values within this distance of an anchor take the anchor's label.
inline constexpr double kAnchorSnap = 1e-12;

struct BandAnchors {
    double small;
    double medium;
    double large;
};

// Cohen's conventional anchors for w and for the arcsine effect size h.
inline constexpr BandAnchors kCohenWAnchors{0.1, 0.3, 0.5};
inline constexpr BandAnchors kCohenHAnchors{0.2, 0.5, 0.8};

struct EffectSize {
    EffectMeasure measure = EffectMeasure::h;
    double value = 0.0;
    Band band = Band::trivial;
};

// Rows are institutions A and B; columns are (top10, not-top10).
struct TwoByTwoTable {
    std::array<std::array<std::int64_t, 2>, 2> cells{};

    static TwoByTwoTable from_records(const InstitutionRecord& a, const InstitutionRecord& b);

    std::int64_t total() const noexcept;
    std::int64_t row_total(int row) const noexcept;
    std::int64_t col_total(int col) const noexcept;
};

// Throws DomainError for a negative value or anchors that are not increasing.
Band classify(double value, const BandAnchors& anchors);
Band classify_w(double value, const BandAnchors& anchors = kCohenWAnchors);
Band classify_h(double value, const BandAnchors& anchors = kCohenHAnchors);

std::string_view band_name(Band band) noexcept;
std::string_view measure_name(EffectMeasure measure) noexcept;

// h = 2 |asin(sqrt(p_observed)) - asin(sqrt(p_expected))|, banded with classify_h.
EffectSize cohens_h(double p_observed, double p_expected,
                    const BandAnchors& anchors = kCohenHAnchors);

// Pearson chi-square over the four cells. Throws DegenerateDataError on a zero marginal.
double chi_square(const TwoByTwoTable& table);

// w = sqrt(chi2 / n).
EffectSize cohens_w(const TwoByTwoTable& table, const BandAnchors& anchors = kCohenWAnchors);

// V = sqrt(chi2 / (n (min(rows, cols) - 1))); equal to w for 2x2 tables.
EffectSize cramers_v(const TwoByTwoTable& table, const BandAnchors& anchors = kCohenWAnchors);

}  // namespace rankstat
