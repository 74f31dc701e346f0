// Run configuration: flat key=value files with [section] headers, plus the
// mollifier bump-list file format.  Flags win over config-file values; the
// CLI applies them on top of the parsed RunConfig.
#pragma once

#include <string>

#include "colombeau/engine.hpp"

namespace colombeau {

struct RunConfig {
    std::string mollifier_path; // empty: built-in default geometry
    std::string psi = "all";    // A | B | C | all | poly:c0,c1,c2,c3,c4
    double sigma_max = 0.0625;          // 2^-4
    double sigma_min = 0.000244140625;  // 2^-12
    double grid_ratio = 0.5;
    double tol = 1e-9;
    bool tol_set = false;
    std::string format = "pretty"; // pretty | csv | json
    std::string out_path;          // empty: stdout
    std::string precision = "double";
    int threads = 0; // 0: library default; 1: serial reference path
};

RunConfig parse_config_file(const std::string& path);

// [f] / [g] sections with "bump = center halfwidth amplitude" lines
MollifierSpec parse_mollifier_file(const std::string& path);

// validate + translate into an EngineConfig (grid, psis, precision)
EngineConfig make_engine_config(const RunConfig& rc);

} // namespace colombeau
