// Pairing <rep(sigma,.), psi> at fixed sigma: the integral driving every
// association sweep.  The domain is the intersection of the representative's
// declared support with supp psi; representative breakpoints become forced
// panel boundaries; internal integrals run at a tenth of the pairing
// tolerance.
#pragma once

#include "colombeau/quadrature.hpp"
#include "colombeau/representative.hpp"
#include "colombeau/testfn.hpp"

namespace colombeau {

template <class R>
struct PairResult {
    cplx<R> value{};
    R error{};
    int panels = 0;
    bool converged = false;
};

template <class R>
PairResult<R> pair(const Representative<R>& rep, const TestFunction<R>& psi, R sigma, R tol,
                   int max_panels = 6000) {
    if (!(sigma > R(0)))
        throw std::invalid_argument("pair: sigma must be positive");
    const R pr = psi.support_radius();
    R lo = bounded_below(rep.support) ? std::max(-pr, -rep.radius * sigma) : -pr;
    R hi = bounded_above(rep.support) ? std::min(pr, rep.radius * sigma) : pr;
    if (!(lo < hi))
        return {cplx<R>{}, R(0), 0, true};

    const R inner_tol = tol / 10;
    std::vector<Breakpoint<R>> bps;
    for (R b : rep.breakpoints(sigma))
        bps.emplace_back(b);

    QuadOptions<R> opts;
    opts.tol = tol;
    opts.max_panels = max_panels;
    auto res = integrate<R>(
        [&rep, &psi, sigma, inner_tol](R x) { return rep.eval(sigma, x, inner_tol) * psi(x); },
        lo, hi, bps, opts);

    PairResult<R> out;
    out.value = res.value;
    out.error = res.error_estimate + res.roundoff + tol / 5;
    out.panels = res.panels_used;
    out.converged = res.converged;
    return out;
}

} // namespace colombeau
