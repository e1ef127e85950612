#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankstat/effect_sizes.hpp"
#include "rankstat/proportion_tests.hpp"

namespace rankstat {

enum class SortKey {
    proportion,    // descending top-10% share
    publications,  // descending n_pubs
    input,         // keep the given order
};

// Institutions in rank order. Rank positions are 1-based.
// Ties under the sort key are broken by descending n_pubs, then ascending id.
class RankingDataset {
public:
    RankingDataset() = default;
    // Validates every record and rejects duplicate ids (DuplicateIdError).
    explicit RankingDataset(std::vector<InstitutionRecord> records,
                            SortKey key = SortKey::proportion);

    const std::vector<InstitutionRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    SortKey sort_key() const noexcept { return key_; }

    const InstitutionRecord& at_rank(std::size_t rank) const;
    std::optional<std::size_t> rank_of(std::string_view id) const;

private:
    std::vector<InstitutionRecord> records_;
    SortKey key_ = SortKey::proportion;
};

struct ExcellenceEntry {
    std::size_t rank = 0;
    std::string id;
    double proportion = 0.0;
    TestResult test;
    EffectSize h;
    // Sign of p - p_expected; h itself carries no direction.
    int direction = 0;
};

std::vector<ExcellenceEntry> excellence_flags(const RankingDataset& ds, double p_expected = 0.10,
                                              double alpha = 0.05,
                                              Tails tails = Tails::two_sided);

struct PairCell {
    std::size_t rank_a = 0;
    std::size_t rank_b = 0;
    // Empty when the pooled proportion is 0 or 1.
    std::optional<TestResult> test;
    EffectSize h;
    ConfidenceInterval ci;
    int direction = 0;

    bool degenerate() const noexcept { return !test.has_value(); }
};

struct PairwiseOptions {
    double alpha = 0.05;
    // Divide alpha by the number of pairs.
    bool bonferroni = false;
};

// Upper triangle of all pairs, row-major over (rank_a < rank_b).
class PairwiseMatrix {
public:
    PairwiseMatrix(std::size_t n, double effective_alpha, std::vector<PairCell> cells);

    std::size_t size() const noexcept { return n_; }
    double effective_alpha() const noexcept { return alpha_; }
    const std::vector<PairCell>& cells() const noexcept { return cells_; }
    // 1-based ranks, a != b; order of the arguments does not matter.
    const PairCell& at(std::size_t rank_a, std::size_t rank_b) const;

private:
    std::size_t n_;
    double alpha_;
    std::vector<PairCell> cells_;
};

// Two-sample z, pairwise h and the (1 - alpha) interval for p_a - p_b for one pair.
PairCell compare_pair(const InstitutionRecord& a, const InstitutionRecord& b, double alpha);

PairwiseMatrix pairwise_matrix(const RankingDataset& ds, const PairwiseOptions& options = {});

struct NeighborhoodReport {
    std::string reference_id;
    std::size_t reference_rank = 0;
    double threshold = 0.2;
    // Institutions whose h against the reference is below threshold, in rank order.
    std::vector<std::string> trivial_ids;
    // Maximal contiguous rank run around the reference whose members are all trivial.
    std::pair<std::size_t, std::size_t> span{0, 0};
    std::size_t count = 0;
};

// Throws NotFoundError when reference_id is absent.
NeighborhoodReport trivial_neighborhood(const RankingDataset& ds, std::string_view reference_id,
                                        double h_threshold = kCohenHAnchors.small);

const char* sort_key_name(SortKey key) noexcept;

}  // namespace rankstat
