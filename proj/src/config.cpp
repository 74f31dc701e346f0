#include "colombeau/config.hpp"

#include <fstream>
#include <sstream>

namespace colombeau {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct KvLine {
    std::string section, key, value;
};

std::vector<KvLine> read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw usage_error("cannot open config file '" + path + "'");
    std::vector<KvLine> out;
    std::string section, line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error("config line is not key = value: '" + line + "'");
        out.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    return out;
}

double to_double(const KvLine& kv) {
    try {
        std::size_t used = 0;
        const double v = std::stod(kv.value, &used);
        if (used != kv.value.size())
            throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw usage_error("config: bad numeric value for " + kv.key + ": '" + kv.value + "'");
    }
}

} // namespace

RunConfig parse_config_file(const std::string& path) {
    RunConfig rc;
    for (const auto& kv : read_kv(path)) {
        const std::string id = kv.section + "." + kv.key;
        if (id == "sweep.sigma_max")
            rc.sigma_max = to_double(kv);
        else if (id == "sweep.sigma_min")
            rc.sigma_min = to_double(kv);
        else if (id == "sweep.grid_ratio")
            rc.grid_ratio = to_double(kv);
        else if (id == "sweep.tol") {
            rc.tol = to_double(kv);
            rc.tol_set = true;
        } else if (id == "run.psi")
            rc.psi = kv.value;
        else if (id == "run.precision")
            rc.precision = kv.value;
        else if (id == "run.threads")
            rc.threads = static_cast<int>(to_double(kv));
        else if (id == "run.mollifier")
            rc.mollifier_path = kv.value;
        else if (id == "output.format")
            rc.format = kv.value;
        else if (id == "output.path")
            rc.out_path = kv.value;
        else
            throw usage_error("config: unknown key '" + id + "'");
    }
    return rc;
}

MollifierSpec parse_mollifier_file(const std::string& path) {
    MollifierSpec spec;
    bool any = false;
    for (const auto& kv : read_kv(path)) {
        if (kv.key != "bump")
            throw usage_error("mollifier file: unknown key '" + kv.key + "'");
        std::istringstream ss(kv.value);
        MollifierSpec::Bump b{};
        if (!(ss >> b.center >> b.halfwidth >> b.amplitude))
            throw usage_error("mollifier file: bump needs 'center halfwidth amplitude'");
        if (kv.section == "f")
            spec.f.push_back(b);
        else if (kv.section == "g")
            spec.g.push_back(b);
        else
            throw usage_error("mollifier file: bumps must sit in [f] or [g]");
        any = true;
    }
    if (!any)
        throw usage_error("mollifier file defines no bumps");
    return spec;
}

EngineConfig make_engine_config(const RunConfig& rc) {
    EngineConfig cfg;
    if (!rc.mollifier_path.empty())
        cfg.mollifier = parse_mollifier_file(rc.mollifier_path);

    if (!(rc.sigma_max > rc.sigma_min) || !(rc.sigma_min > 0))
        throw usage_error("require sigma_max > sigma_min > 0");
    if (!(rc.grid_ratio > 0 && rc.grid_ratio < 1))
        throw usage_error("grid_ratio must lie in (0,1)");
    cfg.plan.sigma_grid.clear();
    for (double s = rc.sigma_max; s >= rc.sigma_min * (1 - 1e-12); s *= rc.grid_ratio)
        cfg.plan.sigma_grid.push_back(s);
    cfg.plan.pair_tol = rc.tol;

    if (rc.precision == "double") {
        cfg.precision = Precision::double_prec;
    } else if (rc.precision == "extended") {
        cfg.precision = Precision::extended;
        if (!rc.tol_set)
            cfg.plan.pair_tol = 1e-12;
    } else {
        throw usage_error("precision must be 'double' or 'extended'");
    }

    cfg.psis.clear();
    if (rc.psi == "all") {
        cfg.psis = {{"A"}, {"B"}, {"C"}};
    } else if (rc.psi == "A" || rc.psi == "B" || rc.psi == "C") {
        cfg.psis = {{rc.psi}};
    } else if (rc.psi.rfind("poly:", 0) == 0) {
        std::stringstream ss(rc.psi.substr(5));
        std::string item;
        int count = 0;
        while (std::getline(ss, item, ',')) {
            try {
                (void)std::stod(item);
            } catch (...) {
                throw usage_error("bad polynomial coefficient '" + item + "'");
            }
            ++count;
        }
        if (count == 0 || count > 5)
            throw usage_error("poly: takes 1 to 5 coefficients");
        cfg.psis = {{rc.psi}};
    } else {
        throw usage_error("unknown test function '" + rc.psi + "'");
    }

    cfg.parallel = rc.threads != 1;
    cfg.tol_user_set = rc.tol_set;
    cfg.plan.validate();
    return cfg;
}

} // namespace colombeau
