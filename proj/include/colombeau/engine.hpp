// Batch execution over the case catalog: work units are (case, check, psi)
// triples, independent by construction.  run_jobs evaluates them either
// serially or with an OpenMP parallel-for; results land in preassigned slots,
// so both paths produce bit-identical output.  The extended-precision path
// reruns the same pipeline with long double arithmetic.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colombeau/association.hpp"

namespace colombeau {

enum class Precision { double_prec, extended };

struct MollifierSpec {
    struct Bump {
        double center, halfwidth, amplitude;
    };
    std::vector<Bump> f, g;

    static MollifierSpec standard();
};

struct PsiSpec {
    std::string token = "A"; // A | B | C | poly:c0,c1,c2,c3,c4
};

struct EngineConfig {
    MollifierSpec mollifier = MollifierSpec::standard();
    SweepPlan plan = default_plan();
    Precision precision = Precision::double_prec;
    std::vector<PsiSpec> psis = {{"A"}, {"B"}, {"C"}};
    bool parallel = true;
    bool tol_user_set = false; // explicit --tol wins over per-case budgets
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// resolve "all" or explicit ids against the catalog; throws usage_error
std::vector<const CatalogCase*> resolve_cases(const std::vector<std::string>& ids);

// run the given cases over all configured psi; reports in catalog order
std::vector<AssociationReport> run_cases(const std::vector<const CatalogCase*>& cases,
                                         const EngineConfig& cfg);

// ad-hoc expression sweep (one report per psi); optional reference target
std::vector<AssociationReport> run_expression(const std::string& expr,
                                              const std::optional<std::string>& target_expr,
                                              const EngineConfig& cfg);

// ---- output ----
std::string to_pretty(const std::vector<AssociationReport>& reports);
std::string to_csv(const std::vector<AssociationReport>& reports);
std::string to_json(const std::vector<AssociationReport>& reports);

bool all_passed(const std::vector<AssociationReport>& reports);

} // namespace colombeau
