#include "rankstat/report.hpp"

#include <fmt/format.h>

#include <ostream>
#include <sstream>

#include "rankstat/csv_io.hpp"
#include "rankstat/effect_sizes.hpp"

namespace rankstat {

namespace {

std::string yes_no(bool b) {
    return b ? "yes" : "no";
}

std::string direction_mark(int direction) {
    return direction > 0 ? "+" : (direction < 0 ? "-" : "0");
}

std::string count(std::int64_t n) {
    return fmt::format("{}", n);
}

void append_test(Row& row, const TestResult& t) {
    row.emplace_back("p_value", format_fixed(t.p_value));
    row.emplace_back("alpha", format_fixed(t.alpha));
    row.emplace_back("significant", yes_no(t.significant));
    row.emplace_back("tails", tails_name(t.tails));
    row.emplace_back("small_sample", yes_no(t.small_sample));
    row.emplace_back("underflow", yes_no(t.underflow));
}

void append_ci(Row& row, const ConfidenceInterval& ci) {
    row.emplace_back("diff", format_fixed(ci.estimate));
    row.emplace_back("se", format_fixed(ci.standard_error));
    row.emplace_back("ci_lower", format_fixed(ci.lower));
    row.emplace_back("ci_upper", format_fixed(ci.upper));
    row.emplace_back("level", format_fixed(ci.level));
    row.emplace_back("ci_degenerate", yes_no(ci.degenerate));
}

Row pair_row(const InstitutionRecord& a, std::size_t rank_a, const InstitutionRecord& b,
             std::size_t rank_b, const PairCell& cell) {
    Row row;
    row.emplace_back("rank_a", count(static_cast<std::int64_t>(rank_a)));
    row.emplace_back("a", a.id);
    row.emplace_back("rank_b", count(static_cast<std::int64_t>(rank_b)));
    row.emplace_back("b", b.id);
    row.emplace_back("p_a", format_fixed(a.proportion()));
    row.emplace_back("p_b", format_fixed(b.proportion()));
    if (cell.test) {
        row.emplace_back("z", format_fixed(cell.test->z));
    } else {
        row.emplace_back("z", "NA");
    }
    row.emplace_back("h", format_fixed(cell.h.value));
    row.emplace_back("band", std::string(band_name(cell.h.band)));
    row.emplace_back("direction", direction_mark(cell.direction));
    if (cell.test) {
        append_test(row, *cell.test);
    } else {
        for (const char* key : {"p_value", "alpha", "significant", "tails", "small_sample", "underflow"}) {
            row.emplace_back(key, "NA");
        }
    }
    row.emplace_back("degenerate", yes_no(cell.degenerate()));
    append_ci(row, cell.ci);
    return row;
}

void emit_text(std::ostream& out, const Report& report) {
    for (const auto& table : report.tables) {
        out << "# " << table.name << '\n';
        for (const auto& row : table.rows) {
            bool first = true;
            for (const auto& [key, value] : row) {
                if (!first) out << ',';
                first = false;
                out << key << '=' << quote_csv_field(value);
            }
            out << '\n';
        }
    }
}

void emit_csv(std::ostream& out, const Report& report) {
    const bool sections = report.tables.size() > 1;
    bool first_table = true;
    for (const auto& table : report.tables) {
        if (sections) {
            if (!first_table) out << '\n';
            out << "# " << table.name << '\n';
        }
        first_table = false;
        if (table.rows.empty()) continue;
        bool first = true;
        for (const auto& field : table.rows.front()) {
            if (!first) out << ',';
            first = false;
            out << field.first;
        }
        out << '\n';
        for (const auto& row : table.rows) {
            first = true;
            for (const auto& field : row) {
                if (!first) out << ',';
                first = false;
                out << quote_csv_field(field.second);
            }
            out << '\n';
        }
    }
}

}  // namespace

std::string format_fixed(double value) {
    auto s = fmt::format("{:.6f}", value);
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

void emit_report(std::ostream& out, const Report& report, Format format) {
    if (format == Format::csv) {
        emit_csv(out, report);
    } else {
        emit_text(out, report);
    }
}

std::string render(const Report& report, Format format) {
    std::ostringstream os;
    emit_report(os, report, format);
    return os.str();
}

Report one_sample_report(const InstitutionRecord& rec, double p_expected, const TestResult& test,
                         const EffectSize& h) {
    Row row;
    row.emplace_back("institution", rec.id);
    row.emplace_back("n_pubs", count(rec.n_pubs));
    row.emplace_back("n_top10", count(rec.n_top10));
    row.emplace_back("proportion", format_fixed(rec.proportion()));
    row.emplace_back("expected", format_fixed(p_expected));
    row.emplace_back("z", format_fixed(test.z));
    row.emplace_back("h", format_fixed(h.value));
    row.emplace_back("band", std::string(band_name(h.band)));
    const double diff = rec.proportion() - p_expected;
    row.emplace_back("direction", direction_mark((diff > 0) - (diff < 0)));
    append_test(row, test);
    return {{{"one-sample z test", {std::move(row)}}}};
}

Report pair_report(const InstitutionRecord& a, const InstitutionRecord& b, const PairCell& cell) {
    Row row = pair_row(a, 1, b, 2, cell);
    row.erase(row.begin() + 2);  // rank_b
    row.erase(row.begin());      // rank_a
    const auto table = TwoByTwoTable::from_records(a, b);
    if (table.row_total(0) > 0 && table.row_total(1) > 0 && table.col_total(0) > 0 &&
        table.col_total(1) > 0) {
        const auto w = cohens_w(table);
        const auto v = cramers_v(table);
        row.emplace_back("chi2", format_fixed(chi_square(table)));
        row.emplace_back("w", format_fixed(w.value));
        row.emplace_back("w_band", std::string(band_name(w.band)));
        row.emplace_back("V", format_fixed(v.value));
    } else {
        for (const char* key : {"chi2", "w", "w_band", "V"}) row.emplace_back(key, "NA");
    }
    return {{{"two-sample z test", {std::move(row)}}}};
}

Report excellence_report(const std::vector<ExcellenceEntry>& entries, double p_expected) {
    Table table{"excellence indicator", {}};
    for (const auto& e : entries) {
        Row row;
        row.emplace_back("rank", count(static_cast<std::int64_t>(e.rank)));
        row.emplace_back("institution", e.id);
        row.emplace_back("proportion", format_fixed(e.proportion));
        row.emplace_back("expected", format_fixed(p_expected));
        row.emplace_back("z", format_fixed(e.test.z));
        row.emplace_back("h", format_fixed(e.h.value));
        row.emplace_back("band", std::string(band_name(e.h.band)));
        row.emplace_back("direction", direction_mark(e.direction));
        append_test(row, e.test);
        table.rows.push_back(std::move(row));
    }
    return {{std::move(table)}};
}

Report matrix_report(const RankingDataset& ds, const PairwiseMatrix& matrix) {
    Table table{"pairwise comparisons", {}};
    table.rows.reserve(matrix.cells().size());
    for (const auto& cell : matrix.cells()) {
        table.rows.push_back(pair_row(ds.at_rank(cell.rank_a), cell.rank_a,
                                      ds.at_rank(cell.rank_b), cell.rank_b, cell));
    }
    return {{std::move(table)}};
}

Report neighborhood_report(const RankingDataset& ds, const NeighborhoodReport& report) {
    Row summary;
    summary.emplace_back("reference", report.reference_id);
    summary.emplace_back("reference_rank", count(static_cast<std::int64_t>(report.reference_rank)));
    summary.emplace_back("h_threshold", format_fixed(report.threshold));
    summary.emplace_back("count", count(static_cast<std::int64_t>(report.count)));
    summary.emplace_back("span_low", count(static_cast<std::int64_t>(report.span.first)));
    summary.emplace_back("span_high", count(static_cast<std::int64_t>(report.span.second)));

    const auto& ref = ds.at_rank(report.reference_rank);
    Table members{"trivial institutions", {}};
    for (const auto& id : report.trivial_ids) {
        const auto rank = *ds.rank_of(id);
        const auto& rec = ds.at_rank(rank);
        const auto h = cohens_h(ref.proportion(), rec.proportion());
        Row row;
        row.emplace_back("rank", count(static_cast<std::int64_t>(rank)));
        row.emplace_back("institution", id);
        row.emplace_back("proportion", format_fixed(rec.proportion()));
        row.emplace_back("h", format_fixed(h.value));
        row.emplace_back("band", std::string(band_name(h.band)));
        row.emplace_back("in_span", yes_no(rank >= report.span.first && rank <= report.span.second));
        members.rows.push_back(std::move(row));
    }
    return {{Table{"trivial neighborhood", {std::move(summary)}}, std::move(members)}};
}

Report power_report(const PowerReport& power, double target_power, double detectable_h) {
    Row row;
    row.emplace_back("h", format_fixed(power.h));
    row.emplace_back("band", std::string(band_name(classify_h(power.h))));
    row.emplace_back("n1", count(power.n1));
    row.emplace_back("n2", count(power.n2));
    row.emplace_back("alpha", format_fixed(power.alpha));
    row.emplace_back("tails", tails_name(power.tails));
    row.emplace_back("power", format_fixed(power.power));
    row.emplace_back("target_power", format_fixed(target_power));
    row.emplace_back("min_detectable_h", format_fixed(detectable_h));
    return {{{"power", {std::move(row)}}}};
}

Report sample_size_report(double h, double alpha, double target_power, Tails tails,
                          std::int64_t n_per_group, double achieved_power) {
    Row row;
    row.emplace_back("h", format_fixed(h));
    row.emplace_back("alpha", format_fixed(alpha));
    row.emplace_back("target_power", format_fixed(target_power));
    row.emplace_back("tails", tails_name(tails));
    row.emplace_back("n_per_group", count(n_per_group));
    row.emplace_back("achieved_power", format_fixed(achieved_power));
    return {{{"required sample size", {std::move(row)}}}};
}

Report cluster_report(const ClusterPlan& plan, const std::optional<ClusterComparison>& selected,
                      const std::optional<HomogeneitySweep>& sweep) {
    Report report;
    Table clusters{"clusters", {}};
    for (std::size_t i = 0; i < plan.clusters.size(); ++i) {
        const auto& c = plan.clusters[i];
        Row row;
        row.emplace_back("index", count(static_cast<std::int64_t>(i)));
        row.emplace_back("start_year", count(c.start_year));
        row.emplace_back("end_year", count(c.end_year));
        row.emplace_back("n_pubs", count(c.n_pubs));
        row.emplace_back("n_top10", count(c.n_top10));
        row.emplace_back("proportion",
                         c.n_pubs > 0 ? format_fixed(static_cast<double>(c.n_top10) /
                                                     static_cast<double>(c.n_pubs))
                                      : "NA");
        row.emplace_back("selected", yes_no(plan.selected_index == i));
        clusters.rows.push_back(std::move(row));
    }
    report.tables.push_back(std::move(clusters));

    auto comparison_row = [](const ClusterComparison& c) {
        Row row;
        row.emplace_back("index", count(static_cast<std::int64_t>(c.cluster_index)));
        row.emplace_back("cluster", c.cluster.id);
        row.emplace_back("cluster_n", count(c.cluster.n_pubs));
        row.emplace_back("cluster_top10", count(c.cluster.n_top10));
        row.emplace_back("complement_n", count(c.complement.n_pubs));
        row.emplace_back("complement_top10", count(c.complement.n_top10));
        row.emplace_back("z", format_fixed(c.test.z));
        row.emplace_back("h", format_fixed(c.h.value));
        row.emplace_back("band", std::string(band_name(c.h.band)));
        append_test(row, c.test);
        return row;
    };

    if (selected) {
        Row row = comparison_row(*selected);
        row.insert(row.begin(), Field{"seed", plan.seed ? fmt::format("{}", *plan.seed) : std::string("NA")});
        report.tables.push_back({"selected cluster vs complement", {std::move(row)}});
    }
    if (sweep) {
        Table table{"homogeneity sweep", {}};
        for (const auto& c : sweep->comparisons) table.rows.push_back(comparison_row(c));
        report.tables.push_back(std::move(table));
        Row summary;
        summary.emplace_back("clusters_tested", count(static_cast<std::int64_t>(sweep->comparisons.size())));
        summary.emplace_back("max_abs_z", format_fixed(sweep->max_abs_z));
        summary.emplace_back("max_index", count(static_cast<std::int64_t>(sweep->max_index)));
        report.tables.push_back({"homogeneity summary", {std::move(summary)}});
    }
    return report;
}

Report calibration_report(const std::vector<CalibrationRow>& rows) {
    Table table{"monte carlo calibration", {}};
    for (const auto& r : rows) {
        Row row;
        row.emplace_back("experiment", r.experiment);
        row.emplace_back("parameters", r.parameters);
        row.emplace_back("trials", count(r.trials));
        row.emplace_back("seed", fmt::format("{}", r.seed));
        row.emplace_back("empirical", format_fixed(r.empirical));
        row.emplace_back("reference", format_fixed(r.reference));
        row.emplace_back("difference", format_fixed(r.empirical - r.reference));
        table.rows.push_back(std::move(row));
    }
    return {{std::move(table)}};
}

Report dataset_report(const RankingDataset& ds) {
    Table table{"dataset", {}};
    for (const auto& r : ds.records()) {
        table.rows.push_back({{"institution", r.id}, {"n_pubs", count(r.n_pubs)},
                              {"n_top10", count(r.n_top10)}});
    }
    return {{std::move(table)}};
}

}  // namespace rankstat
