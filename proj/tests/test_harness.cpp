#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iss/errors.hpp"
#include "iss/harness.hpp"
#include "iss/rng.hpp"

using namespace iss;

namespace {

ExperimentConfig with_params(std::map<std::string, std::string> params) {
    ExperimentConfig cfg;
    cfg.params = std::move(params);
    return cfg;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_SUITE("harness") {

TEST_CASE("parameter lookups fall back and validate") {
    ExperimentConfig cfg = with_params({{"a", "2.5"}, {"b", "42"}, {"c", "1.5, 2.5 ,3"}, {"d", "x"}});
    CHECK(param_real(cfg, "a", 0.0) == 2.5);
    CHECK(param_real(cfg, "missing", -1.5) == -1.5);
    CHECK(param_int(cfg, "b", 0) == 42);
    CHECK(param_int(cfg, "missing", 7) == 7);
    std::vector<double> c = param_reals(cfg, "c", {});
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 1.5);
    CHECK(c[1] == 2.5);
    CHECK(c[2] == 3.0);
    CHECK(param_str(cfg, "d", "") == "x");
    CHECK(param_str(cfg, "missing", "y") == "y");

    CHECK_THROWS_AS(param_real(cfg, "d", 0.0), BadParameter);
    CHECK_THROWS_AS(param_int(cfg, "a", 0), BadParameter);
    CHECK_THROWS_AS(param_reals(cfg, "d", {}), BadParameter);
}

TEST_CASE("config files ignore comments and keep the last value") {
    TempFile f("harness_cfg_ok.tmp",
               "# a comment\nscheme = modsum\n\n  n = 3\nn=5\ntrials=77\n");
    auto kv = parse_config_file(f.path);
    CHECK(kv.at("scheme") == "modsum");
    CHECK(kv.at("n") == "5");
    CHECK(kv.at("trials") == "77");
    CHECK(kv.size() == 3);
}

TEST_CASE("malformed config lines report their line number") {
    TempFile f("harness_cfg_bad.tmp", "scheme=modsum\nnot a pair\n");
    try {
        parse_config_file(f.path);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_config_file("no_such_file.tmp"), BadParameter);
}

TEST_CASE("seventeen digit formatting round trips doubles") {
    for (double v : {1.0 / 3.0, 0.1, -2.5e-17, 1e300, 0.0, 12345.678901234567}) {
        CHECK(std::stod(format17(v)) == v);
    }
}

TEST_CASE("report rows come out sorted with a fixed header") {
    std::vector<TrialReport> reports(2);
    reports[0].check = "b-check";
    reports[0].expected = 1.5;
    reports[0].observed = 1.25;
    reports[0].tolerance = 0.5;
    reports[0].pass = true;
    reports[1].check = "a-check";
    reports[1].observed = 2.0;
    std::ostringstream out;
    emit_reports_csv(out, reports);
    CHECK(out.str() ==
          "check,expected,observed,tolerance,pass\n"
          "a-check,0,2,0,0\n"
          "b-check,1.5,1.25,0.5,1\n");
}

TEST_CASE("dealing rows carry trial and share coordinates") {
    Dealing d;
    d.secret = 0.5;
    d.shares = {{1.0}, {0.25, 2.0}};
    std::ostringstream out;
    emit_dealings_csv(out, {d});
    CHECK(out.str() ==
          "trial,secret,participant_index,share_component_index,value\n"
          "0,0.5,0,0,1\n"
          "0,0.5,1,0,0.25\n"
          "0,0.5,1,1,2\n");
}

TEST_CASE("trial accumulation is independent of the worker count") {
    auto run = [](int threads) {
        return accumulate_trials(
            20000, threads, 99, std::vector<double>{},
            [](std::vector<double>& acc, long, Stream& rng) { acc.push_back(rng.normal()); },
            [](std::vector<double>& total, std::vector<double>& part) {
                total.insert(total.end(), part.begin(), part.end());
            });
    };
    std::vector<double> one = run(1);
    std::vector<double> four = run(4);
    REQUIRE(one.size() == 20000);
    CHECK(one == four);
}

TEST_CASE("worker exceptions surface at the call site") {
    CHECK_THROWS_AS(accumulate_trials(
                        10000, 4, 1, 0,
                        [](int&, long t, Stream&) {
                            if (t == 5000) throw BadParameter("boom");
                        },
                        [](int&, int&) {}),
                    BadParameter);
}

TEST_CASE("dealt shares round trip through the recover path") {
    ExperimentConfig cfg;
    cfg.scheme = "modsum";
    cfg.trials = 1;
    cfg.seed = 11;
    std::vector<Dealing> deals = run_deal(cfg);
    REQUIRE(deals.size() == 1);
    const Dealing& d = deals[0];
    REQUIRE(d.shares.size() == 3);

    std::ostringstream csv;
    csv << "participant_index,share_component_index,value\n";
    for (std::size_t p = 0; p < d.shares.size(); ++p) {
        csv << p << ",0," << format17(d.shares[p][0]) << "\n";
    }
    std::istringstream in(csv.str());
    CHECK(run_recover(cfg, in) == doctest::Approx(d.secret).epsilon(1e-12));
}

TEST_CASE("recover reads a dealings file from deal directly") {
    ExperimentConfig cfg;
    cfg.scheme = "modsum";
    cfg.trials = 1;
    cfg.seed = 11;
    std::vector<Dealing> deals = run_deal(cfg);
    std::ostringstream csv;
    emit_dealings_csv(csv, deals);
    std::istringstream in(csv.str());
    CHECK(run_recover(cfg, in) == doctest::Approx(deals[0].secret).epsilon(1e-12));
}

TEST_CASE("recover rejects a dealings file holding several trials") {
    ExperimentConfig cfg;
    cfg.scheme = "modsum";
    cfg.trials = 2;
    cfg.seed = 11;
    std::vector<Dealing> deals = run_deal(cfg);
    std::ostringstream csv;
    emit_dealings_csv(csv, deals);
    std::istringstream in(csv.str());
    CHECK_THROWS_AS(run_recover(cfg, in), BadParameter);
}

TEST_CASE("recover rejects a gap in the share components") {
    ExperimentConfig cfg;
    cfg.scheme = "modsum";
    std::istringstream in("participant_index,share_component_index,value\n0,1,0.5\n");
    CHECK_THROWS_AS(run_recover(cfg, in), BadParameter);
}

TEST_CASE("unknown scheme names are rejected everywhere") {
    ExperimentConfig cfg;
    cfg.scheme = "nope";
    cfg.trials = 1;
    CHECK_THROWS_AS(run_deal(cfg), UnknownScheme);
    std::istringstream in("participant_index,share_component_index,value\n0,0,0.5\n");
    CHECK_THROWS_AS(run_recover(cfg, in), UnknownScheme);
    CHECK_THROWS_AS(run_verify(cfg), UnknownScheme);
    CHECK_THROWS_AS(run_density(cfg), UnknownScheme);
}

TEST_CASE("the verify suite registry names every scheme family") {
    std::vector<std::string> suites = verify_suites();
    CHECK(suites.size() == 17);
    for (const auto& s : {"numerics", "access", "hilbert", "stat-strip", "wiener-dense"}) {
        CHECK(std::count(suites.begin(), suites.end(), s) == 1);
    }
}

TEST_CASE("density curves emit their x column name") {
    DensityCurve curve;
    curve.x_name = "x";
    curve.rows = {{0.0, 1.5}, {0.5, 0.25}};
    std::ostringstream out;
    emit_density_csv(out, curve);
    CHECK(out.str() == "x,density\n0,1.5\n0.5,0.25\n");
}

}
