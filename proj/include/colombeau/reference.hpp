// Exact evaluation of <u, psi> for the reference distributions appearing as
// association targets.  x_+^(-p-1) uses the Hoermander principal-part form
//
//   <x_+^(-p-1), psi> = -(1/p!) int_0^inf ln x psi^(p+1)(x) dx
//                       + kappa_p psi^(p)(0) / p!
//
// with psi^(p+1) produced by exact differentiation of the poly*bump
// representation, never numerically.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "colombeau/quadrature.hpp"
#include "colombeau/real.hpp"
#include "colombeau/representative.hpp"
#include "colombeau/testfn.hpp"

namespace colombeau {

enum class RefAtom {
    delta,       // delta^(k), parameter k >= 0
    xplus_neg,   // x_+^(-p), parameter p >= 1
    xminus_neg,  // x_-^(-p)
    x_neg,       // x^(-p) = x_+^(-p) + (-1)^p x_-^(-p)
    x_neg_sgn,   // x^(-p) sgn x = x_+^(-p) - (-1)^p x_-^(-p)
    lnabs,
    lnplus,
    lnminus,
    theta,
    theta_check,
    xplus_pow,   // x_+^a, real a > -1
    one,
};

struct RefTerm {
    std::complex<double> coeff{1.0, 0.0};
    RefAtom atom = RefAtom::one;
    int p = 0;      // derivative order / negative power, where applicable
    double a = 0.0; // real exponent for xplus_pow
};

struct ReferenceDistribution {
    std::vector<RefTerm> terms;

    ReferenceDistribution& add(std::complex<double> c, RefAtom atom, int p = 0, double a = 0.0);
    void canonicalize(); // merge duplicate atoms
    std::string to_string() const;
};

std::string ref_atom_name(const RefTerm& t);

namespace detail {

template <class R>
cplx<R> integral_ln_times(const TestFunction<R>& psi, int deriv_order, R tol) {
    // int_0^supp ln x psi^(m)(x) dx with the log endpoint handled
    std::vector<Breakpoint<R>> bps;
    bps.emplace_back(R(0), Endpoint::log_singular);
    QuadOptions<R> opts;
    opts.tol = tol;
    auto r = integrate<R>(
        [&psi, deriv_order](R x) { return cplx<R>(std::log(x) * psi.deriv(x, deriv_order), R(0)); },
        R(0), psi.support_radius(), bps, opts);
    if (!r.converged)
        throw quadrature_error("reference log integral did not converge");
    return r.value;
}

template <class R>
cplx<R> integral_plain(const TestFunction<R>& psi, R lo, R hi, R tol) {
    if (!(lo < hi))
        return {};
    QuadOptions<R> opts;
    opts.tol = tol;
    auto r = integrate<R>([&psi](R x) { return cplx<R>(psi(x), R(0)); }, lo, hi,
                          {Breakpoint<R>(R(0))}, opts);
    if (!r.converged)
        throw quadrature_error("reference integral did not converge");
    return r.value;
}

template <class R>
cplx<R> eval_xplus_neg(const TestFunction<R>& psi, int power, R tol) {
    // <x_+^(-power), psi>, power >= 1, via the principal-part formula
    const int p = power - 1;
    if (p + 1 > 4)
        throw std::invalid_argument("eval_reference: needed psi-derivative order exceeds 4");
    R fact = 1;
    for (int k = 2; k <= p; ++k)
        fact *= R(k);
    const R kappa = harmonic(p).template value<R>();
    const cplx<R> lead = -integral_ln_times(psi, p + 1, tol) / fact;
    return lead + kappa * psi.deriv(R(0), p) / fact;
}

} // namespace detail

template <class R>
cplx<R> eval_reference_term(const RefTerm& t, const TestFunction<R>& psi, R tol = R(1e-12)) {
    const R pr = psi.support_radius();
    switch (t.atom) {
    case RefAtom::delta: {
        if (t.p > 4)
            throw std::invalid_argument("eval_reference: needed psi-derivative order exceeds 4");
        const R v = psi.deriv(R(0), t.p);
        return (t.p % 2 ? -v : v);
    }
    case RefAtom::theta:
        return detail::integral_plain(psi, R(0), pr, tol);
    case RefAtom::theta_check:
        return detail::integral_plain(psi, -pr, R(0), tol);
    case RefAtom::one:
        return detail::integral_plain(psi, -pr, R(0), tol) +
               detail::integral_plain(psi, R(0), pr, tol);
    case RefAtom::lnplus:
        return detail::integral_ln_times(psi, 0, tol);
    case RefAtom::lnminus:
        return detail::integral_ln_times(psi.mirrored(), 0, tol);
    case RefAtom::lnabs:
        return detail::integral_ln_times(psi, 0, tol) +
               detail::integral_ln_times(psi.mirrored(), 0, tol);
    case RefAtom::xplus_pow: {
        const R a = R(t.a);
        if (!(a > R(-1)))
            throw std::invalid_argument("eval_reference: x_+^a requires a > -1");
        std::vector<Breakpoint<R>> bps;
        const bool integral_exp = std::floor(t.a) == t.a && t.a >= 0;
        bps.emplace_back(R(0), integral_exp ? Endpoint::none : Endpoint::algebraic, a);
        QuadOptions<R> opts;
        opts.tol = tol;
        auto r = integrate<R>(
            [&psi, a](R x) { return cplx<R>(std::pow(x, a) * psi(x), R(0)); }, R(0), pr, bps,
            opts);
        if (!r.converged)
            throw quadrature_error("reference x_+^a integral did not converge");
        return r.value;
    }
    case RefAtom::xplus_neg:
        return detail::eval_xplus_neg(psi, t.p, tol);
    case RefAtom::xminus_neg:
        return detail::eval_xplus_neg(psi.mirrored(), t.p, tol);
    case RefAtom::x_neg: {
        const R par = (t.p % 2 == 0) ? R(1) : R(-1);
        return detail::eval_xplus_neg(psi, t.p, tol) +
               par * detail::eval_xplus_neg(psi.mirrored(), t.p, tol);
    }
    case RefAtom::x_neg_sgn: {
        const R par = (t.p % 2 == 0) ? R(1) : R(-1);
        return detail::eval_xplus_neg(psi, t.p, tol) -
               par * detail::eval_xplus_neg(psi.mirrored(), t.p, tol);
    }
    }
    throw std::invalid_argument("eval_reference: unknown atom");
}

template <class R>
cplx<R> eval_reference(const ReferenceDistribution& u, const TestFunction<R>& psi,
                       R tol = R(1e-12)) {
    cplx<R> acc{};
    for (const auto& t : u.terms)
        acc += cplx<R>(R(t.coeff.real()), R(t.coeff.imag())) * eval_reference_term(t, psi, tol);
    return acc;
}

} // namespace colombeau
