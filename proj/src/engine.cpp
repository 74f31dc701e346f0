#include "colombeau/engine.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace colombeau {

MollifierSpec MollifierSpec::standard() {
    MollifierSpec s;
    s.f = {{0.0, 1.0, 1.0}};
    s.g = {{3.0, 1.0, 1.0}, {-3.0, 1.0, 1.0}, {6.0, 1.0, -1.0}, {-6.0, 1.0, -1.0}};
    return s;
}

namespace {

template <class R>
std::shared_ptr<const KernelFamily<R>> family_from_spec(const MollifierSpec& spec) {
    KernelSum<R> f, g;
    for (const auto& b : spec.f)
        f.parts.push_back(make_bump<R>(R(b.center), R(b.halfwidth), R(b.amplitude)));
    for (const auto& b : spec.g)
        g.parts.push_back(make_bump<R>(R(b.center), R(b.halfwidth), R(b.amplitude)));
    return build_model_mollifier<R>(std::move(f), std::move(g));
}

template <class R>
TestFunction<R> psi_from_spec(const PsiSpec& spec) {
    if (spec.token.size() == 1 &&
        (spec.token[0] == 'A' || spec.token[0] == 'B' || spec.token[0] == 'C'))
        return psi_catalog<R>(spec.token[0]);
    if (spec.token.rfind("poly:", 0) == 0) {
        std::array<R, 5> c{};
        std::stringstream ss(spec.token.substr(5));
        std::string item;
        std::size_t i = 0;
        while (std::getline(ss, item, ',') && i < 5)
            c[i++] = R(std::stod(item));
        return TestFunction<R>(c, R(4), spec.token);
    }
    throw usage_error("unknown test function '" + spec.token + "'");
}

struct Job {
    const CatalogCase* cs = nullptr;
    int check = 0;
    PsiSpec psi;
    std::string expr;                       // for ad-hoc eval jobs
    std::optional<std::string> target_expr; // ad-hoc target
    bool adhoc = false;
};

template <class R>
std::vector<AssociationReport> run_job(const Job& job, const EngineConfig& cfg) {
    auto fam = family_from_spec<R>(cfg.mollifier);
    auto psi = psi_from_spec<R>(job.psi);
    std::vector<AssociationReport> out;
    if (job.adhoc) {
        CatalogCheck check{"expression", job.expr, ReferenceDistribution{}};
        if (job.target_expr)
            check.target = compile_reference(*parse(*job.target_expr));
        AssociationReport r =
            run_check<R>(check, fam, psi, cfg.plan, 1e-3, /*expect_divergent=*/false);
        r.case_id = "eval";
        if (!job.target_expr) {
            // no target: any conclusive verdict counts as success
            r.passed = r.verdict != Verdict::inconclusive;
        }
        out.push_back(std::move(r));
        return out;
    }
    const CatalogCase& cs = *job.cs;
    SweepPlan plan = cfg.plan;
    if (!cfg.tol_user_set && cs.pair_tol > 0)
        plan.pair_tol = cs.pair_tol;
    if (cs.embedding) {
        auto emb = embedding_counterexample<R>(2, psi, plan, cs.rel_tol);
        emb.first.expression = cs.checks.front().expr;
        emb.second.expression = cs.checks.front().expr;
        emb.first.target_text = emb.note;
        emb.second.target_text = emb.note;
        out.push_back(std::move(emb.first));
        out.push_back(std::move(emb.second));
        return out;
    }
    const auto& check = cs.checks[static_cast<std::size_t>(job.check)];
    AssociationReport r = run_check<R>(check, fam, psi, plan, cs.rel_tol);
    r.case_id = cs.id;
    out.push_back(std::move(r));
    return out;
}

std::vector<AssociationReport> run_jobs(const std::vector<Job>& jobs, const EngineConfig& cfg) {
    std::vector<std::vector<AssociationReport>> slots(jobs.size());
    std::vector<std::string> errors(jobs.size());

    auto execute = [&](std::size_t i) {
        try {
            slots[i] = cfg.precision == Precision::extended
                           ? run_job<long double>(jobs[i], cfg)
                           : run_job<double>(jobs[i], cfg);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };

    if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < static_cast<long>(jobs.size()); ++i)
            execute(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            execute(i);
    }

    std::vector<AssociationReport> out;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!errors[i].empty()) {
            AssociationReport r;
            r.case_id = jobs[i].adhoc ? "eval" : jobs[i].cs->id;
            r.psi = jobs[i].psi.token;
            r.label = "numerical failure: " + errors[i];
            r.verdict = Verdict::inconclusive;
            r.passed = false;
            out.push_back(std::move(r));
            continue;
        }
        for (auto& r : slots[i])
            out.push_back(std::move(r));
    }
    return out;
}

} // namespace

std::vector<const CatalogCase*> resolve_cases(const std::vector<std::string>& ids) {
    std::vector<const CatalogCase*> out;
    if (ids.size() == 1 && ids.front() == "all") {
        for (const auto& c : case_catalog())
            out.push_back(&c);
        return out;
    }
    for (const auto& id : ids) {
        const CatalogCase* c = find_case(id);
        if (!c)
            throw usage_error("unknown case id '" + id + "'");
        out.push_back(c);
    }
    return out;
}

std::vector<AssociationReport> run_cases(const std::vector<const CatalogCase*>& cases,
                                         const EngineConfig& cfg) {
    std::vector<Job> jobs;
    for (const CatalogCase* cs : cases) {
        const int n_checks = cs->embedding ? 1 : static_cast<int>(cs->checks.size());
        for (int k = 0; k < n_checks; ++k)
            for (const auto& psi : cfg.psis)
                jobs.push_back(Job{cs, k, psi, {}, std::nullopt, false});
    }
    return run_jobs(jobs, cfg);
}

std::vector<AssociationReport> run_expression(const std::string& expr,
                                              const std::optional<std::string>& target_expr,
                                              const EngineConfig& cfg) {
    (void)parse(expr); // surface syntax errors before spawning jobs
    if (target_expr)
        (void)compile_reference(*parse(*target_expr));
    std::vector<Job> jobs;
    for (const auto& psi : cfg.psis)
        jobs.push_back(Job{nullptr, 0, psi, expr, target_expr, true});
    return run_jobs(jobs, cfg);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_complex(std::complex<double> z) {
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", z.real());
    os << buf;
    if (z.imag() != 0.0) {
        std::snprintf(buf, sizeof buf, "%+.10gi", z.imag());
        os << buf;
    }
    return os.str();
}

} // namespace

std::string to_pretty(const std::vector<AssociationReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << r.case_id;
        if (!r.label.empty())
            os << " [" << r.label << "]";
        os << "  psi=" << r.psi << "\n";
        if (!r.expression.empty())
            os << "    expr:    " << r.expression << "\n";
        os << "    verdict: " << verdict_name(r.verdict);
        if (r.verdict == Verdict::associated) {
            os << "  limit = " << fmt_complex(r.limit) << " (est err " << r.limit_error << ")";
        } else if (r.verdict == Verdict::divergent) {
            os << "  leading " << basis_name(r.leading) << " coeff " << fmt_complex(r.leading_coeff);
        }
        os << "\n";
        if (r.has_target) {
            os << "    target:  " << fmt_complex(r.target);
            if (!r.target_text.empty())
                os << "   (" << r.target_text << ")";
            os << "\n    deviation: abs " << r.deviation_abs << ", rel " << r.deviation_rel
               << " (tol " << r.rel_tol << ")\n";
        } else if (!r.target_text.empty()) {
            os << "    note:    " << r.target_text << "\n";
        }
        os << "    " << (r.passed ? "PASS" : "FAIL") << "\n";
    }
    return os.str();
}

std::string to_csv(const std::vector<AssociationReport>& reports) {
    std::ostringstream os;
    os << "case,psi,sigma,re,im,quad_err\n";
    for (const auto& r : reports) {
        std::string key = r.case_id;
        if (!r.label.empty() && r.label != r.case_id && reports.size() > 1) {
            // disambiguate multi-check cases deterministically
            for (const auto& other : reports) {
                if (&other != &r && other.case_id == r.case_id && other.psi == r.psi &&
                    other.label != r.label) {
                    key = r.case_id + "/" + r.label;
                    break;
                }
            }
        }
        for (const auto& v : r.values) {
            os << key << "," << r.psi << "," << fmt(v.sigma) << "," << fmt(v.value.real()) << ","
               << fmt(v.value.imag()) << "," << fmt(v.err) << "\n";
        }
    }
    return os.str();
}

std::string to_json(const std::vector<AssociationReport>& reports) {
    nlohmann::json root = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["case"] = r.case_id;
        j["label"] = r.label;
        j["psi"] = r.psi;
        j["expression"] = r.expression;
        j["verdict"] = verdict_name(r.verdict);
        j["limit"] = {{"re", r.limit.real()}, {"im", r.limit.imag()}};
        j["limit_error"] = r.limit_error;
        j["residual"] = r.residual;
        if (r.verdict == Verdict::divergent) {
            j["leading"] = basis_name(r.leading);
            j["leading_coeff"] = {{"re", r.leading_coeff.real()}, {"im", r.leading_coeff.imag()}};
        }
        if (r.has_target) {
            j["target"] = {{"re", r.target.real()}, {"im", r.target.imag()}};
            j["target_text"] = r.target_text;
            j["deviation_abs"] = r.deviation_abs;
            j["deviation_rel"] = r.deviation_rel;
            j["rel_tol"] = r.rel_tol;
        }
        j["passed"] = r.passed;
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& [b, c] : r.coefficients)
            coeffs.push_back({{"basis", basis_name(b)}, {"re", c.real()}, {"im", c.imag()}});
        j["coefficients"] = coeffs;
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : r.values)
            vals.push_back({{"sigma", v.sigma},
                            {"re", v.value.real()},
                            {"im", v.value.imag()},
                            {"quad_err", v.err},
                            {"ok", v.ok}});
        j["values"] = vals;
        root.push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

bool all_passed(const std::vector<AssociationReport>& reports) {
    for (const auto& r : reports)
        if (!r.passed)
            return false;
    return !reports.empty();
}

} // namespace colombeau
