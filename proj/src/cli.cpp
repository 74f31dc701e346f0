#include "colombeau/cli.hpp"

#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>

#include "colombeau/config.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace colombeau {

namespace {

struct Flags {
    std::string config_path, mollifier_path, psi, format, out_path, precision;
    double sigma_min = 0, sigma_max = 0, grid_ratio = 0, tol = 0;
    int threads = -1;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "run configuration file (key = value sections)");
    cmd->add_option("--mollifier", f.mollifier_path, "mollifier bump-list file");
    cmd->add_option("--psi", f.psi, "test function: A, B, C, all, or poly:c0,c1,c2,c3,c4");
    cmd->add_option("--sigma-min", f.sigma_min, "smallest sigma of the sweep grid");
    cmd->add_option("--sigma-max", f.sigma_max, "largest sigma of the sweep grid");
    cmd->add_option("--grid-ratio", f.grid_ratio, "geometric grid ratio in (0,1)");
    cmd->add_option("--tol", f.tol, "pairing tolerance");
    cmd->add_option("--format", f.format, "output format: pretty, csv, json");
    cmd->add_option("--out", f.out_path, "output path (default stdout)");
    cmd->add_option("--precision", f.precision, "arithmetic: double or extended");
    cmd->add_option("--threads", f.threads, "worker threads (1 = serial reference path)");
}

RunConfig merge(const Flags& f, const CLI::App* cmd) {
    RunConfig rc;
    if (!f.config_path.empty())
        rc = parse_config_file(f.config_path);
    if (cmd->count("--mollifier"))
        rc.mollifier_path = f.mollifier_path;
    if (cmd->count("--psi"))
        rc.psi = f.psi;
    if (cmd->count("--sigma-min"))
        rc.sigma_min = f.sigma_min;
    if (cmd->count("--sigma-max"))
        rc.sigma_max = f.sigma_max;
    if (cmd->count("--grid-ratio"))
        rc.grid_ratio = f.grid_ratio;
    if (cmd->count("--tol")) {
        rc.tol = f.tol;
        rc.tol_set = true;
    }
    if (cmd->count("--format"))
        rc.format = f.format;
    if (cmd->count("--out"))
        rc.out_path = f.out_path;
    if (cmd->count("--precision"))
        rc.precision = f.precision;
    if (cmd->count("--threads"))
        rc.threads = f.threads;
    return rc;
}

int emit(const std::vector<AssociationReport>& reports, const RunConfig& rc, bool table_only,
         std::ostream& out, std::ostream& err) {
    std::string text;
    if (rc.format == "pretty")
        text = table_only ? to_csv(reports) : to_pretty(reports);
    else if (rc.format == "csv")
        text = to_csv(reports);
    else if (rc.format == "json")
        text = to_json(reports);
    else
        throw usage_error("unknown format '" + rc.format + "'");

    if (rc.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(rc.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << rc.out_path << "'\n";
            return 1;
        }
        file << text;
    }
    return all_passed(reports) ? 0 : 1;
}

void apply_threads(const RunConfig& rc) {
#ifdef _OPENMP
    if (rc.threads > 1)
        omp_set_num_threads(rc.threads);
#else
    (void)rc;
#endif
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Colombeau-algebra laboratory for singular distribution products"};
    app.footer("The COLOMBEAU_SEED environment variable is reserved; core paths are "
               "deterministic and ignore it.");
    (void)std::getenv("COLOMBEAU_SEED");
    app.require_subcommand(1);

    Flags vf, ef, tf;
    std::vector<std::string> verify_ids{"all"};
    std::string eval_expr, eval_target;
    std::vector<std::string> table_ids{"all"};

    CLI::App* verify = app.add_subcommand("verify", "run catalog verifications");
    verify->add_option("cases", verify_ids, "case ids or 'all'");
    add_common_flags(verify, vf);

    CLI::App* eval = app.add_subcommand("eval", "sweep an ad-hoc expression");
    eval->add_option("expr", eval_expr, "expression in the DSL")->required();
    eval->add_option("--target", eval_target, "reference-distribution expression to compare");
    add_common_flags(eval, ef);

    CLI::App* table = app.add_subcommand("table", "emit the full pairing table");
    table->add_option("cases", table_ids, "case ids or 'all'");
    add_common_flags(table, tf);

    std::vector<const char*> argv;
    argv.push_back("colombeau");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) {
            RunConfig rc = merge(vf, verify);
            apply_threads(rc);
            auto cases = resolve_cases(verify_ids);
            auto reports = run_cases(cases, make_engine_config(rc));
            return emit(reports, rc, false, out, err);
        }
        if (eval->parsed()) {
            RunConfig rc = merge(ef, eval);
            apply_threads(rc);
            std::optional<std::string> target;
            if (eval->count("--target"))
                target = eval_target;
            auto reports = run_expression(eval_expr, target, make_engine_config(rc));
            return emit(reports, rc, false, out, err);
        }
        if (table->parsed()) {
            RunConfig rc = merge(tf, table);
            if (rc.format == "pretty")
                rc.format = "csv"; // tables are machine-readable by default
            apply_threads(rc);
            auto cases = resolve_cases(table_ids);
            auto reports = run_cases(cases, make_engine_config(rc));
            return emit(reports, rc, true, out, err);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace colombeau
