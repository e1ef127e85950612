#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankstat/cluster_sampling.hpp"
#include "rankstat/power_analysis.hpp"
#include "rankstat/ranking_analysis.hpp"

namespace rankstat {

// text: one record per line as comma-separated key=value pairs, tables headed by "# name".
// csv: a header row of the keys followed by plain values. Reports with more than
// one table prefix each table with "# name" and separate them by a blank line.
enum class Format { text, csv };

using Field = std::pair<std::string, std::string>;
using Row = std::vector<Field>;

struct Table {
    std::string name;
    std::vector<Row> rows;
};

struct Report {
    std::vector<Table> tables;
};

// Fixed six decimals with '.' regardless of locale; negative zero prints as 0.000000.
std::string format_fixed(double value);

void emit_report(std::ostream& out, const Report& report, Format format);
std::string render(const Report& report, Format format);

Report one_sample_report(const InstitutionRecord& rec, double p_expected, const TestResult& test,
                         const EffectSize& h);

// `cell` carries the test, h and interval for a against b. w and V are added when
// the 2x2 table has no zero marginal.
Report pair_report(const InstitutionRecord& a, const InstitutionRecord& b, const PairCell& cell);

Report excellence_report(const std::vector<ExcellenceEntry>& entries, double p_expected);

Report matrix_report(const RankingDataset& ds, const PairwiseMatrix& matrix);

Report neighborhood_report(const RankingDataset& ds, const NeighborhoodReport& report);

Report power_report(const PowerReport& power, double target_power, double detectable_h);

Report sample_size_report(double h, double alpha, double target_power, Tails tails,
                          std::int64_t n_per_group, double achieved_power);

Report cluster_report(const ClusterPlan& plan, const std::optional<ClusterComparison>& selected,
                      const std::optional<HomogeneitySweep>& sweep);

struct CalibrationRow {
    std::string experiment;
    std::string parameters;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double empirical = 0.0;
    // Analytic or nominal value the empirical rate is compared with.
    double reference = 0.0;
};

Report calibration_report(const std::vector<CalibrationRow>& rows);

// institution,n_pubs,n_top10 in rank order; parse_ranking_csv reads it back.
Report dataset_report(const RankingDataset& ds);

}  // namespace rankstat
