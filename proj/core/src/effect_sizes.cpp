#include "rankstat/effect_sizes.hpp"

#include <algorithm>
#include <cmath>

#include "rankstat/errors.hpp"

namespace rankstat {

TwoByTwoTable TwoByTwoTable::from_records(const InstitutionRecord& a, const InstitutionRecord& b) {
    a.validate();
    b.validate();
    TwoByTwoTable t;
    t.cells = {{{a.n_top10, a.n_pubs - a.n_top10}, {b.n_top10, b.n_pubs - b.n_top10}}};
    return t;
}

std::int64_t TwoByTwoTable::total() const noexcept {
    return row_total(0) + row_total(1);
}

std::int64_t TwoByTwoTable::row_total(int row) const noexcept {
    return cells[row][0] + cells[row][1];
}

std::int64_t TwoByTwoTable::col_total(int col) const noexcept {
    return cells[0][col] + cells[1][col];
}

Band classify(double value, const BandAnchors& anchors) {
    if (!(value >= 0.0)) {
        throw DomainError("effect size must be non-negative");
    }
    if (!(anchors.small > 0.0 && anchors.small < anchors.medium && anchors.medium < anchors.large)) {
        throw DomainError("band anchors must satisfy 0 < small < medium < large");
    }
    auto near = [value](double anchor) { return std::abs(value - anchor) <= kAnchorSnap; };
    if (near(anchors.large) || value > anchors.large) return Band::large;
    if (near(anchors.medium)) return Band::medium;
    if (value > anchors.medium) return Band::medium_to_large;
    if (near(anchors.small)) return Band::small;
    if (value > anchors.small) return Band::small_to_medium;
    return Band::trivial;
}

Band classify_w(double value, const BandAnchors& anchors) {
    return classify(value, anchors);
}

Band classify_h(double value, const BandAnchors& anchors) {
    return classify(value, anchors);
}

std::string_view band_name(Band band) noexcept {
    switch (band) {
        case Band::trivial:
            return "trivial";
        case Band::small:
            return "small";
        case Band::small_to_medium:
            return "small-to-medium";
        case Band::medium:
            return "medium";
        case Band::medium_to_large:
            return "medium-to-large";
        case Band::large:
            return "large";
    }
    return "unknown";
}

std::string_view measure_name(EffectMeasure measure) noexcept {
    switch (measure) {
        case EffectMeasure::h:
            return "h";
        case EffectMeasure::w:
            return "w";
        case EffectMeasure::v:
            return "V";
    }
    return "unknown";
}

EffectSize cohens_h(double p_observed, double p_expected, const BandAnchors& anchors) {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_observed) || !in_unit(p_expected)) {
        throw DomainError("proportions for Cohen's h must lie in [0, 1]");
    }
    const double value =
        2.0 * std::abs(std::asin(std::sqrt(p_observed)) - std::asin(std::sqrt(p_expected)));
    return {EffectMeasure::h, value, classify_h(value, anchors)};
}

double chi_square(const TwoByTwoTable& table) {
    for (const auto& row : table.cells) {
        for (auto c : row) {
            if (c < 0) throw DomainError("contingency table cells must be non-negative");
        }
    }
    const double n = static_cast<double>(table.total());
    for (int i = 0; i < 2; ++i) {
        if (table.row_total(i) == 0 || table.col_total(i) == 0) {
            throw DegenerateDataError("contingency table has a zero marginal; chi-square is undefined");
        }
    }
    double chi2 = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double expected =
                static_cast<double>(table.row_total(r)) * static_cast<double>(table.col_total(c)) / n;
            const double diff = static_cast<double>(table.cells[r][c]) - expected;
            chi2 += diff * diff / expected;
        }
    }
    return chi2;
}

EffectSize cohens_w(const TwoByTwoTable& table, const BandAnchors& anchors) {
    const double value = std::sqrt(chi_square(table) / static_cast<double>(table.total()));
    return {EffectMeasure::w, value, classify_w(value, anchors)};
}

EffectSize cramers_v(const TwoByTwoTable& table, const BandAnchors& anchors) {
    constexpr int kRows = 2;
    constexpr int kCols = 2;
    const double df_min = static_cast<double>(std::min(kRows, kCols) - 1);
    const double value =
        std::sqrt(chi_square(table) / (static_cast<double>(table.total()) * df_min));
    return {EffectMeasure::v, value, classify_w(value, anchors)};
}

}  // namespace rankstat
