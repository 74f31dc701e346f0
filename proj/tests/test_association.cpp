#include <doctest.h>

#include <cmath>
#include <cstring>

#include "colombeau/association.hpp"
#include "oracles.hpp"

using namespace colombeau;
using C = std::complex<double>;

namespace {

std::shared_ptr<const ModelMollifier<double>> fam() {
    static auto m = default_model_mollifier<double>();
    return m;
}

std::vector<SweepValue> synth(const std::function<C(double)>& model, double err = 1e-14) {
    std::vector<SweepValue> out;
    for (int k = 4; k <= 12; ++k) {
        SweepValue v;
        v.sigma = std::ldexp(1.0, -k);
        v.value = model(v.sigma);
        v.err = err;
        v.ok = true;
        out.push_back(v);
    }
    return out;
}

SweepPlan quick_plan() {
    SweepPlan p;
    for (int k = 4; k <= 11; ++k)
        p.sigma_grid.push_back(std::ldexp(1.0, -k));
    p.pair_tol = 1e-9;
    return p;
}

} // namespace

TEST_SUITE("association") {

TEST_CASE("plan validation") {
    SweepPlan p = default_plan();
    CHECK_NOTHROW(p.validate());
    CHECK(p.sigma_grid.size() == 9);
    CHECK(p.sigma_grid.front() == 0.0625);
    CHECK(p.sigma_grid.back() == doctest::Approx(std::ldexp(1.0, -12)));

    SweepPlan small;
    small.sigma_grid = {0.1, 0.05};
    CHECK_THROWS_AS(small.validate(), std::invalid_argument);

    SweepPlan increasing = default_plan();
    std::reverse(increasing.sigma_grid.begin(), increasing.sigma_grid.end());
    CHECK_THROWS_AS(increasing.validate(), std::invalid_argument);

    SweepPlan no_const = default_plan();
    no_const.basis = {BasisTerm::sigma, BasisTerm::inv_sigma};
    CHECK_THROWS_AS(no_const.validate(), std::invalid_argument);
}

TEST_CASE("fit recovers an exact model in the basis") {
    auto values = synth([](double s) { return C(3.0 + 0.7 * s, 0); });
    auto rep = fit_and_judge(values, default_plan().basis);
    CHECK(rep.verdict == Verdict::associated);
    CHECK(std::abs(rep.limit - C(3.0, 0)) < 1e-12);
}

TEST_CASE("fit flags a divergent 1/sigma component") {
    auto values = synth([](double s) { return C(0.2 + 1e-2 / s, 0); }, 1e-12);
    auto rep = fit_and_judge(values, default_plan().basis);
    REQUIRE(rep.verdict == Verdict::divergent);
    CHECK(rep.leading == BasisTerm::inv_sigma);
    CHECK(std::abs(rep.leading_coeff - C(1e-2, 0)) < 1e-8);
}

TEST_CASE("fit flags logarithmic growth") {
    auto values = synth([](double s) { return C(1.0 - 0.05 * std::log(s), 0); }, 1e-12);
    auto rep = fit_and_judge(values, default_plan().basis);
    REQUIRE(rep.verdict == Verdict::divergent);
    CHECK(rep.leading == BasisTerm::log_plain);
}

TEST_CASE("a sigma^2 tail does not masquerade as divergence") {
    // truncation of the basis must not produce spurious verdicts
    auto values = synth([](double s) {
        return C(0.5 + 0.3 * s + 7.0 * s * s - 2.0 * s * s * s, 1.5 * s * s);
    });
    auto rep = fit_and_judge(values, default_plan().basis);
    CHECK(rep.verdict == Verdict::associated);
    CHECK(std::abs(rep.limit - C(0.5, 0)) < 1e-6);
}

TEST_CASE("noise-drowned tail still yields the limit") {
    // mimics the sigma^-3 roundoff profile of the theorem-2 sweeps
    oracles::Lcg rng(4242);
    std::vector<SweepValue> values;
    for (int k = 4; k <= 12; ++k) {
        SweepValue v;
        v.sigma = std::ldexp(1.0, -k);
        const double noise_scale = 3e-16 * 30.0 / (v.sigma * v.sigma * v.sigma);
        v.value = C(-0.1149623254 + 2.0 * v.sigma + noise_scale * (2 * rng.uniform() - 1), 0);
        v.err = noise_scale + 1e-12;
        v.ok = true;
        values.push_back(v);
    }
    auto rep = fit_and_judge(values, default_plan().basis);
    REQUIRE(rep.verdict == Verdict::associated);
    CHECK(std::abs(rep.limit - C(-0.1149623254, 0)) < 1e-4);
}

TEST_CASE("rank-deficient design matrix is inconclusive") {
    auto values = synth([](double s) { return C(1.0 + s, 0); });
    std::vector<BasisTerm> degenerate = {BasisTerm::one, BasisTerm::one, BasisTerm::sigma};
    auto rep = fit_and_judge(values, degenerate);
    CHECK(rep.verdict == Verdict::inconclusive);
}

TEST_CASE("too few points violate the precondition") {
    auto values = synth([](double s) { return C(1.0 + s, 0); });
    values.resize(5);
    CHECK_THROWS_AS(fit_and_judge(values, default_plan().basis), std::invalid_argument);
}

TEST_CASE("sweep drops failing points and enforces the survivor floor") {
    Representative<double> flaky{
        [](double sigma, double x, double) -> C {
            if (sigma < 0.02)
                throw quadrature_error("synthetic failure");
            return {std::exp(-x * x / (sigma * sigma)), 0.0};
        },
        SupportKind::compact, 7.0, [](double) { return std::vector<double>{}; },
        CostHint::closed_form};
    auto psi = psi_catalog<double>('A');
    // grid with >= 6 surviving points works and records the failures
    SweepPlan wide;
    for (int k = 2; k <= 10; ++k)
        wide.sigma_grid.push_back(std::ldexp(1.0, -k));
    // sigma >= 0.02: k = 2..5 survive -> only 4 points -> error
    CHECK_THROWS_AS(sweep(flaky, psi, wide), quadrature_error);

    Representative<double> good = flaky;
    good.eval = [](double sigma, double x, double) -> C {
        return {std::exp(-x * x / (sigma * sigma)), 0.0};
    };
    auto values = sweep(good, psi, wide);
    CHECK(values.size() == 9);
    for (const auto& v : values)
        CHECK(v.ok);
}

TEST_CASE("sweeps are deterministic") {
    auto rep = compile<double>("H * D", fam());
    auto psi = psi_catalog<double>('A');
    auto plan = quick_plan();
    auto v1 = sweep(rep, psi, plan);
    auto v2 = sweep(rep, psi, plan);
    REQUIRE(v1.size() == v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i) {
        CHECK(std::memcmp(&v1[i].value, &v2[i].value, sizeof v1[i].value) == 0);
        CHECK(v1[i].err == v2[i].err);
    }
}

TEST_CASE("linearity of association") {
    // sweep of the sum equals the sum of sweeps pointwise, and limits add
    auto plan = quick_plan();
    auto psi = psi_catalog<double>('A');
    auto a = compile<double>("D", fam());
    auto b = compile<double>("H * D", fam());
    auto s = compile<double>("D + H * D", fam());
    auto va = sweep(a, psi, plan);
    auto vb = sweep(b, psi, plan);
    auto vs = sweep(s, psi, plan);
    for (std::size_t i = 0; i < vs.size(); ++i)
        CHECK(std::abs(vs[i].value - (va[i].value + vb[i].value)) < 1e-7);

    auto ra = fit_and_judge(va, plan.basis);
    auto rb = fit_and_judge(vb, plan.basis);
    auto rs = fit_and_judge(vs, plan.basis);
    REQUIRE(ra.verdict == Verdict::associated);
    REQUIRE(rb.verdict == Verdict::associated);
    REQUIRE(rs.verdict == Verdict::associated);
    CHECK(std::abs(rs.limit - (ra.limit + rb.limit)) < 1e-6);
}

TEST_CASE("verdict stability under grid extension") {
    auto psi = psi_catalog<double>('A');
    for (const char* src : {"D", "H * D"}) {
        auto rep = compile<double>(src, fam());
        auto base = default_plan();
        auto finer = base;
        finer.sigma_grid.push_back(base.sigma_grid.back() / 2);

        auto r1 = fit_and_judge(sweep(rep, psi, base), base.basis);
        auto r2 = fit_and_judge(sweep(rep, psi, finer), finer.basis);
        REQUIRE(r1.verdict == Verdict::associated);
        REQUIRE(r2.verdict == Verdict::associated);
        CHECK(std::abs(r1.limit - r2.limit) <
              2.0 * std::max(r1.limit_error, r2.limit_error) + 1e-15);
    }
}

TEST_CASE("catalog lookup") {
    CHECK(case_catalog().size() == 14);
    CHECK(find_case("TH1M") != nullptr);
    CHECK(find_case("REMARK-EMBED") != nullptr);
    CHECK(find_case("BOGUS") == nullptr);
    CHECK(find_case("TH2M")->checks.front().expr == "Xm^1 * D'''' - Hc * D'''");
}

} // TEST_SUITE
