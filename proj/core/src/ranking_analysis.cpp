#include "rankstat/ranking_analysis.hpp"

#include <algorithm>
#include <unordered_set>

#include "rankstat/errors.hpp"

namespace rankstat {

namespace {

__extension__ using Wide = __int128;

// Compares k_a / n_a with k_b / n_b exactly.
int compare_proportions(const InstitutionRecord& a, const InstitutionRecord& b) {
    const Wide lhs = static_cast<Wide>(a.n_top10) * b.n_pubs;
    const Wide rhs = static_cast<Wide>(b.n_top10) * a.n_pubs;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool tie_break(const InstitutionRecord& a, const InstitutionRecord& b) {
    if (a.n_pubs != b.n_pubs) return a.n_pubs > b.n_pubs;
    return a.id < b.id;
}

int sign_of(double x) {
    return (x > 0.0) - (x < 0.0);
}

}  // namespace

const char* sort_key_name(SortKey key) noexcept {
    switch (key) {
        case SortKey::proportion:
            return "proportion";
        case SortKey::publications:
            return "publications";
        case SortKey::input:
            return "input";
    }
    return "unknown";
}

RankingDataset::RankingDataset(std::vector<InstitutionRecord> records, SortKey key)
    : records_(std::move(records)), key_(key) {
    std::unordered_set<std::string_view> seen;
    for (const auto& r : records_) {
        r.validate();
        if (!seen.insert(r.id).second) throw DuplicateIdError(r.id);
    }
    switch (key_) {
        case SortKey::proportion:
            std::sort(records_.begin(), records_.end(), [](const auto& a, const auto& b) {
                const int c = compare_proportions(a, b);
                return c != 0 ? c > 0 : tie_break(a, b);
            });
            break;
        case SortKey::publications:
            std::sort(records_.begin(), records_.end(), tie_break);
            break;
        case SortKey::input:
            break;
    }
}

const InstitutionRecord& RankingDataset::at_rank(std::size_t rank) const {
    if (rank < 1 || rank > records_.size()) throw NotFoundError("rank out of range");
    return records_[rank - 1];
}

std::optional<std::size_t> RankingDataset::rank_of(std::string_view id) const {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (records_[i].id == id) return i + 1;
    }
    return std::nullopt;
}

std::vector<ExcellenceEntry> excellence_flags(const RankingDataset& ds, double p_expected,
                                              double alpha, Tails tails) {
    if (ds.empty()) throw DomainError("excellence flags need a non-empty dataset");
    std::vector<ExcellenceEntry> out;
    out.reserve(ds.size());
    std::size_t rank = 0;
    for (const auto& rec : ds.records()) {
        ExcellenceEntry e;
        e.rank = ++rank;
        e.id = rec.id;
        e.proportion = rec.proportion();
        e.test = one_sample_z(rec, p_expected, alpha, tails);
        e.h = cohens_h(e.proportion, p_expected);
        e.direction = sign_of(e.proportion - p_expected);
        out.push_back(std::move(e));
    }
    return out;
}

PairwiseMatrix::PairwiseMatrix(std::size_t n, double effective_alpha, std::vector<PairCell> cells)
    : n_(n), alpha_(effective_alpha), cells_(std::move(cells)) {}

const PairCell& PairwiseMatrix::at(std::size_t rank_a, std::size_t rank_b) const {
    if (rank_a > rank_b) std::swap(rank_a, rank_b);
    if (rank_a < 1 || rank_b > n_ || rank_a == rank_b) {
        throw NotFoundError("pairwise matrix has no cell for that rank pair");
    }
    // Row i (0-based) holds n - 1 - i cells; rows before i hold i(2n - i - 1)/2 of them.
    const std::size_t i = rank_a - 1;
    const std::size_t j = rank_b - 1;
    return cells_[i * (2 * n_ - i - 1) / 2 + (j - i - 1)];
}

PairCell compare_pair(const InstitutionRecord& a, const InstitutionRecord& b, double alpha) {
    PairCell cell;
    try {
        cell.test = two_sample_z(a, b, alpha);
    } catch (const DegenerateDataError&) {
        cell.test.reset();
    }
    cell.h = cohens_h(a.proportion(), b.proportion());
    cell.ci = diff_ci(a, b, 1.0 - alpha);
    cell.direction = sign_of(a.proportion() - b.proportion());
    return cell;
}

PairwiseMatrix pairwise_matrix(const RankingDataset& ds, const PairwiseOptions& options) {
    const std::size_t n = ds.size();
    if (n < 2) throw DomainError("pairwise comparison needs at least two institutions");
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    const std::size_t pairs = n * (n - 1) / 2;
    const double alpha = options.bonferroni ? options.alpha / static_cast<double>(pairs)
                                            : options.alpha;
    std::vector<PairCell> cells;
    cells.reserve(pairs);
    const auto& recs = ds.records();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto cell = compare_pair(recs[i], recs[j], alpha);
            cell.rank_a = i + 1;
            cell.rank_b = j + 1;
            cells.push_back(std::move(cell));
        }
    }
    return PairwiseMatrix(n, alpha, std::move(cells));
}

NeighborhoodReport trivial_neighborhood(const RankingDataset& ds, std::string_view reference_id,
                                        double h_threshold) {
    if (!(h_threshold >= 0.0)) throw DomainError("h threshold must be non-negative");
    const auto ref_rank = ds.rank_of(reference_id);
    if (!ref_rank) {
        throw NotFoundError("reference institution '" + std::string(reference_id) + "' not found");
    }
    const auto& recs = ds.records();
    const std::size_t ref = *ref_rank - 1;
    const double p_ref = recs[ref].proportion();

    std::vector<char> trivial(recs.size(), 0);
    NeighborhoodReport report;
    report.reference_id = std::string(reference_id);
    report.reference_rank = *ref_rank;
    report.threshold = h_threshold;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (i == ref) continue;
        if (cohens_h(p_ref, recs[i].proportion()).value < h_threshold) {
            trivial[i] = 1;
            report.trivial_ids.push_back(recs[i].id);
        }
    }
    report.count = report.trivial_ids.size();

    std::size_t lo = ref;
    while (lo > 0 && trivial[lo - 1]) --lo;
    std::size_t hi = ref;
    while (hi + 1 < recs.size() && trivial[hi + 1]) ++hi;
    report.span = {lo + 1, hi + 1};
    return report;
}

}  // namespace rankstat
