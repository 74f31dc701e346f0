#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "colombeau/cli.hpp"
#include "colombeau/config.hpp"

using namespace colombeau;

namespace {

EngineConfig cheap_config() {
    EngineConfig cfg;
    cfg.plan.sigma_grid.clear();
    for (int k = 4; k <= 11; ++k)
        cfg.plan.sigma_grid.push_back(std::ldexp(1.0, -k));
    cfg.psis = {{"A"}};
    return cfg;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = std::string("/tmp/colombeau_test_") + name;
    std::ofstream out(path);
    out << text;
    return path;
}

} // namespace

TEST_SUITE("engine") {

TEST_CASE("case resolution") {
    CHECK(resolve_cases({"all"}).size() == case_catalog().size());
    CHECK(resolve_cases({"DD", "HD"}).size() == 2);
    CHECK_THROWS_AS(resolve_cases({"BOGUS"}), usage_error);
}

TEST_CASE("serial and parallel paths produce identical tables") {
    auto cases = resolve_cases({"DD", "HD", "HD1"});
    EngineConfig cfg = cheap_config();
    cfg.parallel = false;
    const std::string serial = to_csv(run_cases(cases, cfg));
    cfg.parallel = true;
    const std::string parallel = to_csv(run_cases(cases, cfg));
    CHECK(serial == parallel);
    // repeated runs are byte-identical
    CHECK(to_csv(run_cases(cases, cfg)) == parallel);
}

TEST_CASE("report ordering follows the catalog") {
    auto cases = resolve_cases({"HD", "DD"});
    EngineConfig cfg = cheap_config();
    auto reports = run_cases(cases, cfg);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].case_id == "HD");
    CHECK(reports[1].case_id == "DD");
    CHECK(reports[0].passed);
    CHECK(reports[1].passed);
}

TEST_CASE("csv shape and determinism") {
    auto cases = resolve_cases({"DD"});
    EngineConfig cfg = cheap_config();
    auto reports = run_cases(cases, cfg);
    const std::string csv = to_csv(reports);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "case,psi,sigma,re,im,quad_err");
    int rows = 0;
    while (std::getline(lines, line))
        ++rows;
    CHECK(rows == static_cast<int>(cfg.plan.sigma_grid.size()));
}

TEST_CASE("json mirrors the report") {
    auto cases = resolve_cases({"DD"});
    EngineConfig cfg = cheap_config();
    auto reports = run_cases(cases, cfg);
    auto root = nlohmann::json::parse(to_json(reports));
    REQUIRE(root.is_array());
    REQUIRE(root.size() == 1);
    CHECK(root[0]["case"] == "DD");
    CHECK(root[0]["verdict"] == "associated");
    CHECK(root[0]["values"].size() == cfg.plan.sigma_grid.size());
    CHECK(root[0]["coefficients"].size() == cfg.plan.basis.size());
    CHECK(root[0]["passed"].get<bool>());
}

TEST_CASE("expression runs honor targets") {
    EngineConfig cfg = cheap_config();
    auto reports = run_expression("H * D", std::optional<std::string>{"1/2 D"}, cfg);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].verdict == Verdict::associated);
    CHECK(reports[0].has_target);
    CHECK(reports[0].deviation_rel < 1e-4);
    CHECK(reports[0].passed);
}

TEST_CASE("config file parsing and precedence") {
    const std::string cfg_path = write_temp("run.cfg", R"(
# comment
[sweep]
sigma_max = 0.0625
sigma_min = 0.00048828125
grid_ratio = 0.5
tol = 1e-8
[run]
psi = A
precision = double
[output]
format = csv
)");
    RunConfig rc = parse_config_file(cfg_path);
    CHECK(rc.sigma_min == 0.00048828125);
    CHECK(rc.tol == 1e-8);
    CHECK(rc.tol_set);
    CHECK(rc.psi == "A");
    CHECK(rc.format == "csv");
    EngineConfig cfg = make_engine_config(rc);
    CHECK(cfg.plan.sigma_grid.size() == 8);
    CHECK(cfg.psis.size() == 1);
    CHECK(cfg.tol_user_set);

    const std::string bad = write_temp("bad.cfg", "[sweep]\nwrong = 1\n");
    CHECK_THROWS_AS(parse_config_file(bad), usage_error);
}

TEST_CASE("mollifier file parsing") {
    const std::string path = write_temp("moll.cfg", R"(
[f]
bump = 0 1 1
[g]
bump = 3 1 1
bump = -3 1 1
bump = 6 1 -1
bump = -6 1 -1
)");
    MollifierSpec spec = parse_mollifier_file(path);
    CHECK(spec.f.size() == 1);
    CHECK(spec.g.size() == 4);
    CHECK(spec.g[2].amplitude == -1.0);

    const std::string bad = write_temp("moll_bad.cfg", "[f]\nbump = 0 1\n");
    CHECK_THROWS_AS(parse_mollifier_file(bad), usage_error);
}

TEST_CASE("cli exit codes and output") {
    std::ostringstream out, err;
    // unknown case -> usage error 2
    CHECK(cli_main({"verify", "BOGUS"}, out, err) == 2);
    CHECK(err.str().find("unknown case") != std::string::npos);

    // parse error with offset -> 2
    out.str({});
    err.str({});
    CHECK(cli_main({"eval", "("}, out, err) == 2);
    CHECK(err.str().find("offset") != std::string::npos);

    // a quick eval run on a reduced grid
    out.str({});
    err.str({});
    const int rc = cli_main({"eval", "H * D", "--psi", "A", "--sigma-min", "0.00048828125",
                             "--target", "1/2 D"},
                            out, err);
    CHECK(rc == 0);
    CHECK(out.str().find("associated") != std::string::npos);
    CHECK(out.str().find("PASS") != std::string::npos);
}

TEST_CASE("cli table output is deterministic csv") {
    std::ostringstream out1, out2, err;
    const std::vector<std::string> args = {"table", "DD", "--psi", "A",
                                           "--sigma-min", "0.00048828125"};
    CHECK(cli_main(args, out1, err) == 0);
    CHECK(cli_main(args, out2, err) == 0);
    CHECK(out1.str() == out2.str());
    CHECK(out1.str().rfind("case,psi,sigma,re,im,quad_err", 0) == 0);
}

TEST_CASE("cli format and psi validation") {
    std::ostringstream out, err;
    CHECK(cli_main({"verify", "DD", "--format", "yaml"}, out, err) == 2);
    CHECK(cli_main({"verify", "DD", "--psi", "Z", "--sigma-min", "0.00048828125"}, out, err) == 2);
    out.str({});
    err.str({});
    const int rc = cli_main({"eval", "D", "--psi", "poly:1,0,0,0,0", "--sigma-min",
                             "0.00048828125"},
                            out, err);
    CHECK(rc == 0);
}

} // TEST_SUITE
