#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rankstat/effect_sizes.hpp"
#include "rankstat/proportion_tests.hpp"

namespace rankstat {

struct YearRange {
    int first = 1900;
    int last = 2100;
};

struct PublicationRecord {
    int year = 0;
    bool is_top10 = false;
};

struct YearCluster {
    int start_year = 0;
    int end_year = 0;
    std::int64_t n_pubs = 0;
    std::int64_t n_top10 = 0;
};

// Consecutive, non-overlapping year blocks covering every publication year.
struct ClusterPlan {
    int width = 3;
    std::vector<YearCluster> clusters;
    std::optional<std::size_t> selected_index;
    std::optional<std::uint64_t> seed;

    std::int64_t total_pubs() const noexcept;
    std::int64_t total_top10() const noexcept;
    // Index of the cluster containing year, if any.
    std::optional<std::size_t> cluster_of(int year) const noexcept;
};

// Clusters start at the earliest year and step by width; the last cluster absorbs
// any remainder years (1990-1999 at width 3 ends with 1996-1999). Empty blocks
// inside the span are kept with zero counts.
// Throws DomainError for an empty list, width < 1 or a year outside `years`.
ClusterPlan build_clusters(std::span<const PublicationRecord> pubs, int width = 3,
                           YearRange years = {});

// Picks one cluster uniformly with std::mt19937_64 seeded by `seed`.
ClusterPlan select_cluster(ClusterPlan plan, std::uint64_t seed);

struct ClusterComparison {
    std::size_t cluster_index = 0;
    InstitutionRecord cluster;
    InstitutionRecord complement;
    TestResult test;
    EffectSize h;
};

// Two-sample z and h of one cluster against all other clusters pooled. The
// complement is used rather than the full population so the samples are disjoint.
ClusterComparison compare_cluster(const ClusterPlan& plan, std::size_t index, double alpha);

// compare_cluster on the selected cluster. Throws DomainError without a selection.
ClusterComparison cluster_vs_population(const ClusterPlan& plan, double alpha = 0.05);

struct HomogeneitySweep {
    // One entry per cluster that has publications and a non-empty complement.
    std::vector<ClusterComparison> comparisons;
    double max_abs_z = 0.0;
    std::size_t max_index = 0;
};

// Tests every non-empty cluster against its complement.
HomogeneitySweep homogeneity_sweep(const ClusterPlan& plan, double alpha = 0.05);

}  // namespace rankstat
