#include "rankstat/cluster_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "rankstat/errors.hpp"

namespace rankstat {

namespace {

std::string cluster_label(const YearCluster& c) {
    return std::to_string(c.start_year) + "-" + std::to_string(c.end_year);
}

// Unbiased draw from [0, bound) by rejecting the incomplete top block.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace

std::int64_t ClusterPlan::total_pubs() const noexcept {
    std::int64_t n = 0;
    for (const auto& c : clusters) n += c.n_pubs;
    return n;
}

std::int64_t ClusterPlan::total_top10() const noexcept {
    std::int64_t k = 0;
    for (const auto& c : clusters) k += c.n_top10;
    return k;
}

std::optional<std::size_t> ClusterPlan::cluster_of(int year) const noexcept {
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (year >= clusters[i].start_year && year <= clusters[i].end_year) return i;
    }
    return std::nullopt;
}

ClusterPlan build_clusters(std::span<const PublicationRecord> pubs, int width, YearRange years) {
    if (pubs.empty()) throw DomainError("cannot cluster an empty publication list");
    if (width < 1) throw DomainError("cluster width must be at least 1 year");

    int min_year = std::numeric_limits<int>::max();
    int max_year = std::numeric_limits<int>::min();
    for (const auto& p : pubs) {
        if (p.year < years.first || p.year > years.last) {
            throw DomainError("publication year " + std::to_string(p.year) + " outside " +
                              std::to_string(years.first) + "-" + std::to_string(years.last));
        }
        min_year = std::min(min_year, p.year);
        max_year = std::max(max_year, p.year);
    }

    const int span = max_year - min_year + 1;
    const int count = std::max(1, span / width);

    ClusterPlan plan;
    plan.width = width;
    plan.clusters.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        auto& c = plan.clusters[static_cast<std::size_t>(i)];
        c.start_year = min_year + i * width;
        c.end_year = i + 1 == count ? max_year : c.start_year + width - 1;
    }
    for (const auto& p : pubs) {
        const int idx = std::min((p.year - min_year) / width, count - 1);
        auto& c = plan.clusters[static_cast<std::size_t>(idx)];
        ++c.n_pubs;
        if (p.is_top10) ++c.n_top10;
    }
    return plan;
}

ClusterPlan select_cluster(ClusterPlan plan, std::uint64_t seed) {
    if (plan.clusters.empty()) throw DomainError("cannot select from an empty cluster plan");
    std::mt19937_64 rng(seed);
    plan.selected_index = static_cast<std::size_t>(bounded_draw(rng, plan.clusters.size()));
    plan.seed = seed;
    return plan;
}

ClusterComparison compare_cluster(const ClusterPlan& plan, std::size_t index, double alpha) {
    if (index >= plan.clusters.size()) throw DomainError("cluster index out of range");
    const auto& c = plan.clusters[index];
    ClusterComparison out;
    out.cluster_index = index;
    out.cluster = {cluster_label(c), c.n_pubs, c.n_top10};
    out.complement = {"complement", plan.total_pubs() - c.n_pubs, plan.total_top10() - c.n_top10};
    if (out.cluster.n_pubs < 1) {
        throw DomainError("cluster " + out.cluster.id + " contains no publications");
    }
    if (out.complement.n_pubs < 1) {
        throw DomainError("complement of cluster " + out.cluster.id + " contains no publications");
    }
    out.test = two_sample_z(out.cluster, out.complement, alpha);
    out.h = cohens_h(out.cluster.proportion(), out.complement.proportion());
    return out;
}

ClusterComparison cluster_vs_population(const ClusterPlan& plan, double alpha) {
    if (!plan.selected_index) throw DomainError("cluster plan has no selected cluster");
    return compare_cluster(plan, *plan.selected_index, alpha);
}

HomogeneitySweep homogeneity_sweep(const ClusterPlan& plan, double alpha) {
    HomogeneitySweep sweep;
    const auto total = plan.total_pubs();
    for (std::size_t i = 0; i < plan.clusters.size(); ++i) {
        const auto n = plan.clusters[i].n_pubs;
        if (n == 0 || n == total) continue;
        auto cmp = compare_cluster(plan, i, alpha);
        if (std::abs(cmp.test.z) > sweep.max_abs_z || sweep.comparisons.empty()) {
            sweep.max_abs_z = std::abs(cmp.test.z);
            sweep.max_index = i;
        }
        sweep.comparisons.push_back(std::move(cmp));
    }
    return sweep;
}

}  // namespace rankstat
