// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli.hpp"
#include "oracles/oracles.hpp"
#include "rankstat/cluster_sampling.hpp"
#include "rankstat/effect_sizes.hpp"
#include "rankstat/montecarlo.hpp"
#include "rankstat/power_analysis.hpp"
#include "rankstat/proportion_tests.hpp"
#include "rankstat/ranking_analysis.hpp"

using namespace rankstat;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, std::string detail) {
        pass = pass && ok;
        details.push_back((ok ? "ok   " : "FAIL ") + std::move(detail));
    }
};

struct Criterion {
    std::string name;
    std::function<Outcome()> run;
};

std::vector<TwoByTwoTable> random_tables(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> size(1, 20000);
    std::vector<TwoByTwoTable> out;
    while (out.size() < count) {
        const auto na = size(rng);
        const auto nb = size(rng);
        const auto ka = std::uniform_int_distribution<std::int64_t>(0, na)(rng);
        const auto kb = std::uniform_int_distribution<std::int64_t>(0, nb)(rng);
        // Positive marginals: the pooled proportion must not be 0 or 1.
        if (ka + kb == 0 || ka + kb == na + nb) continue;
        out.push_back(TwoByTwoTable::from_records({"a", na, ka}, {"b", nb, kb}));
    }
    return out;
}

InstitutionRecord row_record(const TwoByTwoTable& t, int row) {
    return {row == 0 ? "a" : "b", t.row_total(row), t.cells[row][0]};
}

Outcome arcsine_oracle() {
    Outcome o;
    const double h = cohens_h(0.15, 0.10).value;
    const double ref = static_cast<double>(oracle::cohens_h(0.15L, 0.10L));
    o.check(std::abs(h - ref) <= 1e-9,
            fmt::format("cohens_h(0.15, 0.10) = {:.12f}, series oracle {:.12f}, |diff| = {:.2e} (tol 1e-9)",
                        h, ref, std::abs(h - ref)));
    const double pi_h = cohens_h(1.0, 0.0).value;
    o.check(std::abs(pi_h - std::numbers::pi) <= 1e-12,
            fmt::format("cohens_h(1, 0) = {:.15f}, |diff to pi| = {:.2e} (tol 1e-12)", pi_h,
                        std::abs(pi_h - std::numbers::pi)));
    return o;
}

Outcome z_chi_square() {
    Outcome o;
    double worst = 0.0;
    for (const auto& t : random_tables(1000, 11)) {
        const double z = two_sample_z(row_record(t, 0), row_record(t, 1), 0.05).z;
        worst = std::max(worst, std::abs(z * z - chi_square(t)));
    }
    o.check(worst <= 1e-9, fmt::format("1000 tables, max |z^2 - chi2| = {:.3e} (tol 1e-9)", worst));
    return o;
}

Outcome w_equals_v() {
    Outcome o;
    double worst = 0.0;
    for (const auto& t : random_tables(1000, 11)) {
        worst = std::max(worst, std::abs(cohens_w(t).value - cramers_v(t).value));
    }
    o.check(worst <= 1e-12, fmt::format("1000 tables, max |w - V| = {:.3e} (tol 1e-12)", worst));
    return o;
}

Outcome threshold_fidelity() {
    Outcome o;
    auto expect = [&](double v, Band b) {
        const auto got = classify_w(v);
        o.check(got == b, fmt::format("classify_w({}) = {} (expected {})", v, band_name(got), band_name(b)));
    };
    expect(0.1, Band::small);
    expect(0.3, Band::medium);
    expect(0.5, Band::large);
    expect(0.2, Band::small_to_medium);
    expect(0.15, Band::small_to_medium);
    expect(0.4, Band::medium_to_large);
    expect(0.45, Band::medium_to_large);
    expect(0.05, Band::trivial);
    return o;
}

Outcome power_round_trip() {
    Outcome o;
    const auto n = required_n(0.2, 0.05, 0.80);
    o.check(n == 197, fmt::format("required_n(h=0.2, alpha=0.05, power=0.80, two-sided) = {} (criterion: 197)", n));
    const double p196 = power_two_proportions(0.2, 196, 196, 0.05).power;
    o.check(p196 < 0.80, fmt::format("power at n=196 per group = {:.6f} (criterion: < 0.80)", p196));
    const double p197 = power_two_proportions(0.2, 197, 197, 0.05).power;
    const double pn = power_two_proportions(0.2, n, n, 0.05).power;
    const double pn1 = power_two_proportions(0.2, n - 1, n - 1, 0.05).power;
    o.details.push_back(fmt::format(
        "note power at 197 = {:.6f}; power at {} = {:.6f}, at {} = {:.6f}. With noncentrality "
        "h*sqrt(n/2) the two-sample test needs 2*(z.975+z.80)^2/h^2 = 392.44 per group; 197 is the "
        "one-sample figure (z.975+z.80)^2/h^2 = 196.22",
        p197, n, pn, n - 1, pn1));
    return o;
}

Outcome montecarlo_calibration() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const SimulationConfig cfg{100000, 20121, 0};

    const double type1 = simulate_type1(1000, 0.10, 0.10, 0.05, cfg);
    o.check(type1 >= 0.045 && type1 <= 0.055,
            fmt::format("type I at n=1000, p=0.10, alpha=0.05: {:.6f} (band [0.045, 0.055])", type1));

    // p1 chosen so that cohens_h(p1, 0.10) = 0.2.
    const double p2 = 0.10;
    const double s = std::asin(std::sqrt(p2)) + 0.1;
    const double p1 = std::sin(s) * std::sin(s);
    const double h = cohens_h(p1, p2).value;
    const double power = simulate_power(197, 197, p1, p2, 0.05, cfg);
    o.check(std::abs(power - 0.80) <= 0.01,
            fmt::format("power at h={:.6f} (p1={:.6f}, p2=0.10), n1=n2=197: {:.6f} (criterion: within 0.01 of 0.80)",
                        h, p1, power));
    const double analytic = power_two_proportions(h, 197, 197, 0.05).power;
    o.details.push_back(fmt::format(
        "note analytic power at the same configuration = {:.6f}; |simulated - analytic| = {:.4f}", analytic,
        std::abs(power - analytic)));
    const auto n80 = required_n(h, 0.05, 0.80);
    const double power_at_n80 = simulate_power(n80, n80, p1, p2, 0.05, cfg);
    o.details.push_back(fmt::format("note simulated power at the analytic required n={} per group = {:.6f}", n80,
                                    power_at_n80));

    const double coverage = simulate_ci_coverage(1000, 1000, 0.12, 0.10, 0.95, cfg);
    o.check(coverage >= 0.94 && coverage <= 0.96,
            fmt::format("95% CI coverage at n=1000, p1=0.12, p2=0.10: {:.6f} (band [0.94, 0.96])", coverage));

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(seconds < 90.0, fmt::format("runtime {:.2f} s (limit 90 s)", seconds));
    return o;
}

Outcome neighborhood_oracle() {
    Outcome o;
    const double ps[] = {0.30, 0.14, 0.12, 0.11, 0.10, 0.09, 0.01};
    std::vector<InstitutionRecord> recs;
    for (int i = 0; i < 7; ++i) {
        recs.push_back({std::string(1, static_cast<char>('A' + i)), 1000, std::llround(ps[i] * 1000)});
    }
    const RankingDataset ds(recs);
    std::vector<oracle::Institution> ranked;
    for (const auto& r : ds.records()) ranked.push_back({r.id, r.n_pubs, r.n_top10});

    for (const auto& r : ds.records()) {
        const auto got = trivial_neighborhood(ds, r.id, 0.2);
        const auto want = oracle::neighborhood(ranked, r.id, 0.2L);
        const std::set<std::string> got_set(got.trivial_ids.begin(), got.trivial_ids.end());
        const bool same = got_set == want.trivial && got.span.first == want.span_lo &&
                          got.span.second == want.span_hi && got.count == want.trivial.size();
        o.check(same, fmt::format("reference {} (p={:.2f}): count {} span ({}, {}) vs brute force count {} span ({}, {})",
                                  r.id, r.proportion(), got.count, got.span.first, got.span.second,
                                  want.trivial.size(), want.span_lo, want.span_hi));
    }
    return o;
}

Outcome cluster_coverage() {
    Outcome o;
    std::mt19937_64 rng(1992);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int first = std::uniform_int_distribution<int>(1900, 2070)(rng);
        const int last = first + std::uniform_int_distribution<int>(0, 30)(rng);
        const int width = std::uniform_int_distribution<int>(1, 6)(rng);
        std::vector<PublicationRecord> pubs;
        const int count = std::uniform_int_distribution<int>(1, 300)(rng);
        std::int64_t top = 0;
        for (int i = 0; i < count; ++i) {
            const bool t = std::bernoulli_distribution(0.1)(rng);
            pubs.push_back({std::uniform_int_distribution<int>(first, last)(rng), t});
            top += t;
        }
        const auto plan = build_clusters(pubs, width);
        bool ok = plan.total_pubs() == count && plan.total_top10() == top;
        // Every year present maps to exactly one cluster (coverage + disjointness).
        std::set<int> years;
        for (const auto& p : pubs) years.insert(p.year);
        for (int y : years) {
            int hits = 0;
            for (const auto& c : plan.clusters) hits += (y >= c.start_year && y <= c.end_year);
            ok = ok && hits == 1;
        }
        for (std::size_t i = 0; i + 1 < plan.clusters.size(); ++i) {
            ok = ok && plan.clusters[i].end_year < plan.clusters[i + 1].start_year;
        }
        failures += !ok;
    }
    o.check(failures == 0, fmt::format("1000 random publication sets, {} partition failures", failures));

    std::vector<PublicationRecord> pubs;
    for (int y = 1990; y <= 1998; ++y) pubs.push_back({y, false});
    const auto plan = build_clusters(pubs, 3);
    std::string layout;
    for (const auto& c : plan.clusters) {
        if (!layout.empty()) layout += " / ";
        layout += fmt::format("{}-{}", c.start_year, c.end_year);
    }
    o.check(layout == "1990-1992 / 1993-1995 / 1996-1998",
            "years 1990-1998 at width 3 -> " + layout);
    return o;
}

Outcome cli_determinism() {
    Outcome o;
    const std::string ranking =
        "institution,n_pubs,n_top10\n\"Univ, North\",4200,520\nSouth Institute,3100,290\nEast College,980,95\n"
        "West Lab,15000,2400\nCentral,2500,250\n";
    std::string pubs = "year,is_top10\n";
    std::mt19937_64 rng(3);
    for (int y = 1990; y <= 2001; ++y) {
        for (int i = 0; i < 60; ++i) pubs += fmt::format("{},{}\n", y, std::bernoulli_distribution(0.11)(rng) ? 1 : 0);
    }
    struct Case {
        std::vector<std::string> args;
        const std::string* input;
    };
    const std::vector<Case> cases{
        {{"test-one", "--n-pubs", "1000", "--n-top10", "130"}, nullptr},
        {{"test-pair", "--n-a", "1000", "--k-a", "120", "--n-b", "1000", "--k-b", "100"}, nullptr},
        {{"excellence", "-i", "-"}, &ranking},
        {{"matrix", "-i", "-"}, &ranking},
        {{"neighborhood", "-i", "-", "--reference", "Central"}, &ranking},
        {{"power", "--h", "0.2", "--n1", "197", "--n2", "197"}, nullptr},
        {{"sample-size", "--h", "0.2"}, nullptr},
        {{"cluster-plan", "-i", "-", "--seed", "42"}, &pubs},
        {{"simulate", "--trials", "20000", "--seed", "7"}, nullptr},
    };
    for (const auto& fmt_name : {"text", "csv"}) {
        for (const auto& c : cases) {
            auto args = c.args;
            args.insert(args.begin(), {"--format", fmt_name});
            std::string outputs[2];
            int codes[2];
            for (int i = 0; i < 2; ++i) {
                std::istringstream in(c.input ? *c.input : "");
                std::ostringstream out;
                std::ostringstream err;
                codes[i] = cli::run(args, in, out, err);
                outputs[i] = out.str();
            }
            o.check(codes[0] == 0 && codes[1] == 0 && outputs[0] == outputs[1] && !outputs[0].empty(),
                    fmt::format("{} --format {}: exit {} / {}, {} bytes, identical={}", c.args.front(), fmt_name,
                                codes[0], codes[1], outputs[0].size(), outputs[0] == outputs[1]));
        }
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"arcsine effect size oracle", arcsine_oracle},
        {"z / chi-square consistency", z_chi_square},
        {"2x2 identity w = V", w_equals_v},
        {"threshold fidelity", threshold_fidelity},
        {"power round trip", power_round_trip},
        {"Monte Carlo calibration", montecarlo_calibration},
        {"neighborhood oracle", neighborhood_oracle},
        {"cluster coverage", cluster_coverage},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        std::printf("[%s] %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str());
        for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
        failed += !o.pass;
    }
    std::printf("%zu criteria, %d passed, %d failed\n", criteria.size(),
                static_cast<int>(criteria.size()) - failed, failed);
    return failed == 0 ? 0 : 1;
}
