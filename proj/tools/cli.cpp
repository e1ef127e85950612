#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include "rankstat/cluster_sampling.hpp"
#include "rankstat/csv_io.hpp"
#include "rankstat/effect_sizes.hpp"
#include "rankstat/errors.hpp"
#include "rankstat/montecarlo.hpp"
#include "rankstat/power_analysis.hpp"
#include "rankstat/proportion_tests.hpp"
#include "rankstat/ranking_analysis.hpp"
#include "rankstat/report.hpp"

namespace rankstat::cli {

namespace {

const std::map<std::string, Tails> kTailsNames{
    {"two-sided", Tails::two_sided}, {"greater", Tails::greater}, {"less", Tails::less}};
const std::map<std::string, Format> kFormatNames{{"text", Format::text}, {"csv", Format::csv}};
const std::map<std::string, SortKey> kSortNames{{"proportion", SortKey::proportion},
                                                {"publications", SortKey::publications},
                                                {"input", SortKey::input}};

struct Common {
    double alpha = 0.05;
    double expected = 0.10;
    double level = 0.95;
    double h_threshold = kCohenHAnchors.small;
    std::uint64_t seed = 1;
    Tails tails = Tails::two_sided;
    Format format = Format::text;
};

struct RankingInput {
    std::string path;
    bool proportions = false;
    SortKey sort = SortKey::proportion;
};

void add_alpha(CLI::App* cmd, Common& c) {
    cmd->add_option("--alpha", c.alpha, "Significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

void add_tails(CLI::App* cmd, Common& c) {
    cmd->add_option("--tails", c.tails, "two-sided, greater or less")
        ->transform(CLI::CheckedTransformer(kTailsNames, CLI::ignore_case))
        ->default_str("two-sided");
}

void add_ranking_input(CLI::App* cmd, RankingInput& in) {
    cmd->add_option("--input,-i", in.path, "Ranking CSV (institution,n_pubs,n_top10); - for stdin")
        ->required();
    cmd->add_flag("--proportions", in.proportions,
                  "Read institution,n_pubs,pct_top10 with percentages instead of counts");
    cmd->add_option("--sort", in.sort, "Rank order: proportion, publications or input")
        ->transform(CLI::CheckedTransformer(kSortNames, CLI::ignore_case))
        ->default_str("proportion");
}

template <typename Parse>
auto with_input(const std::string& path, std::istream& stdin_stream, const Parse& parse) {
    if (path == "-") return parse(stdin_stream);
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open input file '" + path + "'");
    return parse(file);
}

RankingDataset load_ranking(const RankingInput& in, std::istream& stdin_stream) {
    return with_input(in.path, stdin_stream, [&](std::istream& s) {
        return in.proportions ? parse_ranking_percent_csv(s, in.sort) : parse_ranking_csv(s, in.sort);
    });
}

// --h directly, or Cohen's h of --p1 against --p2.
struct EffectInput {
    std::optional<double> h;
    std::optional<double> p1;
    std::optional<double> p2;

    void add_to(CLI::App* cmd) {
        auto* h_opt = cmd->add_option("--h", h, "Effect size (Cohen's h)")->check(CLI::NonNegativeNumber);
        auto* p1_opt = cmd->add_option("--p1", p1, "First proportion; h is taken from --p1 and --p2")
                           ->check(CLI::Range(0.0, 1.0));
        auto* p2_opt = cmd->add_option("--p2", p2, "Second proportion")->check(CLI::Range(0.0, 1.0));
        p1_opt->needs(p2_opt)->excludes(h_opt);
        p2_opt->needs(p1_opt)->excludes(h_opt);
    }

    double value() const {
        if (h) return *h;
        if (p1 && p2) return cohens_h(*p1, *p2).value;
        throw CLI::RequiredError("--h or --p1/--p2");
    }
};

struct SimulateArgs {
    std::string experiment = "all";
    std::int64_t trials = 100000;
    std::int64_t n = 1000;
    std::optional<std::int64_t> n2;
    double p = 0.10;
    std::optional<double> expected;
    double p1 = 0.12;
    double p2 = 0.10;
    unsigned workers = 0;
};

std::vector<CalibrationRow> run_simulations(const SimulateArgs& s, const Common& c) {
    SimulationConfig cfg{s.trials, c.seed, s.workers};
    const std::int64_t n2 = s.n2.value_or(s.n);
    const double expected = s.expected.value_or(s.p);
    std::vector<CalibrationRow> rows;
    const bool all = s.experiment == "all";
    if (all || s.experiment == "type1") {
        rows.push_back({"type1",
                        fmt::format("n={} p_true={} p_expected={} alpha={}", s.n, s.p, expected, c.alpha),
                        s.trials, c.seed, simulate_type1(s.n, s.p, expected, c.alpha, cfg), c.alpha});
    }
    if (all || s.experiment == "power") {
        const double h = cohens_h(s.p1, s.p2).value;
        const double analytic =
            s.n >= 2 && n2 >= 2 ? power_two_proportions(h, s.n, n2, c.alpha).power : 0.0;
        rows.push_back({"power",
                        fmt::format("n1={} n2={} p1={} p2={} h={} alpha={}", s.n, n2, s.p1, s.p2,
                                    format_fixed(h), c.alpha),
                        s.trials, c.seed, simulate_power(s.n, n2, s.p1, s.p2, c.alpha, cfg), analytic});
    }
    if (all || s.experiment == "coverage") {
        rows.push_back({"coverage",
                        fmt::format("n1={} n2={} p1={} p2={} level={}", s.n, n2, s.p1, s.p2, c.level),
                        s.trials, c.seed, simulate_ci_coverage(s.n, n2, s.p1, s.p2, c.level, cfg),
                        c.level});
    }
    return rows;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Significance tests, effect sizes, power analysis and cluster sampling "
                 "for top-10% excellence indicators",
                 "rankstat"};
    // -h is left free so --h can name the effect size.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--format", c.format, "Report format: text or csv")
        ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case))
        ->default_str("text");

    std::function<Report()> action;

    // test-one
    InstitutionRecord one{"institution", 0, 0};
    auto* test_one = app.add_subcommand("test-one", "Test one institution's share against the expected value");
    test_one->add_option("--id", one.id, "Institution label")->capture_default_str();
    test_one->add_option("--n-pubs", one.n_pubs, "Publications")->required();
    test_one->add_option("--n-top10", one.n_top10, "Publications in the top-10% class")->required();
    test_one->add_option("--expected", c.expected, "Expected proportion")->capture_default_str();
    add_alpha(test_one, c);
    add_tails(test_one, c);
    test_one->callback([&] {
        action = [&] {
            const auto t = one_sample_z(one, c.expected, c.alpha, c.tails);
            return one_sample_report(one, c.expected, t, cohens_h(one.proportion(), c.expected));
        };
    });

    // test-pair
    InstitutionRecord pa{"A", 0, 0};
    InstitutionRecord pb{"B", 0, 0};
    auto* test_pair = app.add_subcommand("test-pair", "Compare two institutions' shares");
    test_pair->add_option("--id-a", pa.id, "First institution label")->capture_default_str();
    test_pair->add_option("--n-a", pa.n_pubs, "First institution's publications")->required();
    test_pair->add_option("--k-a", pa.n_top10, "First institution's top-10% publications")->required();
    test_pair->add_option("--id-b", pb.id, "Second institution label")->capture_default_str();
    test_pair->add_option("--n-b", pb.n_pubs, "Second institution's publications")->required();
    test_pair->add_option("--k-b", pb.n_top10, "Second institution's top-10% publications")->required();
    test_pair->add_option("--level", c.level, "Confidence level for p_a - p_b")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    add_alpha(test_pair, c);
    add_tails(test_pair, c);
    test_pair->callback([&] {
        action = [&] {
            PairCell cell = compare_pair(pa, pb, c.alpha);
            if (cell.test) cell.test = two_sample_z(pa, pb, c.alpha, c.tails);
            cell.ci = diff_ci(pa, pb, c.level);
            return pair_report(pa, pb, cell);
        };
    });

    // excellence
    RankingInput ex_in;
    auto* excellence = app.add_subcommand("excellence", "Test every institution against the expected share");
    add_ranking_input(excellence, ex_in);
    excellence->add_option("--expected", c.expected, "Expected proportion")->capture_default_str();
    add_alpha(excellence, c);
    add_tails(excellence, c);
    excellence->callback([&] {
        action = [&] {
            const auto ds = load_ranking(ex_in, in);
            return excellence_report(excellence_flags(ds, c.expected, c.alpha, c.tails), c.expected);
        };
    });

    // matrix
    RankingInput mx_in;
    bool bonferroni = false;
    auto* matrix = app.add_subcommand("matrix", "All pairwise comparisons");
    add_ranking_input(matrix, mx_in);
    add_alpha(matrix, c);
    matrix->add_flag("--bonferroni", bonferroni, "Divide alpha by the number of pairs");
    matrix->callback([&] {
        action = [&] {
            const auto ds = load_ranking(mx_in, in);
            return matrix_report(ds, pairwise_matrix(ds, {c.alpha, bonferroni}));
        };
    });

    // neighborhood
    RankingInput nb_in;
    std::string reference;
    auto* neighborhood = app.add_subcommand(
        "neighborhood", "Institutions whose difference to a reference is trivial");
    add_ranking_input(neighborhood, nb_in);
    neighborhood->add_option("--reference,-r", reference, "Reference institution")->required();
    neighborhood->add_option("--h-threshold", c.h_threshold, "h below this is trivial")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    neighborhood->callback([&] {
        action = [&] {
            const auto ds = load_ranking(nb_in, in);
            return neighborhood_report(ds, trivial_neighborhood(ds, reference, c.h_threshold));
        };
    });

    // power
    EffectInput pw_effect;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    double target_power = 0.80;
    auto* power = app.add_subcommand("power", "Power of the two-proportion test");
    pw_effect.add_to(power);
    power->add_option("--n1", n1, "First group size")->required();
    power->add_option("--n2", n2, "Second group size")->required();
    power->add_option("--power", target_power, "Target power for the minimum detectable h")
        ->capture_default_str();
    add_alpha(power, c);
    add_tails(power, c);
    power->callback([&] {
        action = [&] {
            const auto report = power_two_proportions(pw_effect.value(), n1, n2, c.alpha, c.tails);
            return power_report(report, target_power,
                                minimum_detectable_h(n1, n2, c.alpha, target_power, c.tails));
        };
    });

    // sample-size
    EffectInput ss_effect;
    auto* sample_size = app.add_subcommand("sample-size", "Per-group n reaching a target power");
    ss_effect.add_to(sample_size);
    sample_size->add_option("--power", target_power, "Target power")->capture_default_str();
    add_alpha(sample_size, c);
    add_tails(sample_size, c);
    sample_size->callback([&] {
        action = [&] {
            const double h = ss_effect.value();
            const auto n = required_n(h, c.alpha, target_power, c.tails);
            return sample_size_report(h, c.alpha, target_power, c.tails, n,
                                      power_two_proportions(h, n, n, c.alpha, c.tails).power);
        };
    });

    // cluster-plan
    std::string pubs_path;
    int width = 3;
    auto* cluster = app.add_subcommand(
        "cluster-plan", "Year clusters, a random selection and its test against the rest");
    cluster->add_option("--input,-i", pubs_path, "Publication CSV (year,is_top10); - for stdin")
        ->required();
    cluster->add_option("--width", width, "Years per cluster")->check(CLI::PositiveNumber)->capture_default_str();
    cluster->add_option("--seed", c.seed, "Seed for the cluster selection")->capture_default_str();
    add_alpha(cluster, c);
    cluster->callback([&] {
        action = [&] {
            const auto pubs = with_input(pubs_path, in, [](std::istream& s) { return parse_publication_csv(s); });
            const auto plan = select_cluster(build_clusters(pubs, width), c.seed);
            std::optional<ClusterComparison> selected;
            std::optional<HomogeneitySweep> sweep;
            if (plan.clusters.size() > 1) {
                if (plan.clusters[*plan.selected_index].n_pubs > 0) {
                    selected = cluster_vs_population(plan, c.alpha);
                }
                sweep = homogeneity_sweep(plan, c.alpha);
            }
            return cluster_report(plan, selected, sweep);
        };
    });

    // simulate
    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo calibration of the analytic formulas");
    simulate->add_option("--experiment", sim.experiment, "type1, power, coverage or all")
        ->check(CLI::IsMember({"all", "type1", "power", "coverage"}))
        ->capture_default_str();
    simulate->add_option("--trials", sim.trials, "Trials per experiment")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    simulate->add_option("--n", sim.n, "Group size (first group)")->capture_default_str();
    simulate->add_option("--n2", sim.n2, "Second group size (defaults to --n)");
    simulate->add_option("--p", sim.p, "True proportion for the type I experiment")->capture_default_str();
    simulate->add_option("--expected", sim.expected, "Tested proportion for type I (defaults to --p)");
    simulate->add_option("--p1", sim.p1, "First true proportion")->capture_default_str();
    simulate->add_option("--p2", sim.p2, "Second true proportion")->capture_default_str();
    simulate->add_option("--level", c.level, "Interval level for coverage")->capture_default_str();
    simulate->add_option("--workers", sim.workers, "Worker threads (0 = all cores)");
    add_alpha(simulate, c);
    simulate->callback([&] {
        action = [&] { return calibration_report(run_simulations(sim, c)); };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        const Report report = action();
        emit_report(out, report, c.format);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kSuccess;
}

}  // namespace rankstat::cli
