// sigma-parameterized representatives of the modelled singularities, composed
// over a KernelFamily.  Every convolution is evaluated in the scaled variable
// u = (x - y)/sigma, so integrands live on the fixed kernel support
// regardless of sigma:
//
//   delta^(p):   sigma^(-p-1) K^(p)(sigma, x/sigma)
//   theta:       cum(sigma, x/sigma)
//   x_+^a:       sigma^a int (w - v)^a K(sigma, v) dv,          w = x/sigma
//   ln x_+:      ln(sigma) cum(w) + int ln(w - v) K(sigma, v) dv
//   x_+^(-p-1):  (-1)^p/(sigma^(p+1) p!) [ int ln(w - v) K^(p+1)(sigma, v) dv
//                                           + (ln sigma + kappa_p) K^(p)(sigma, w) ]
//
// Minus-side variants are mirrors (the kernel is even); derived combinations
// expand into exact-coefficient linear combinations.
#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "colombeau/mollifier.hpp"
#include "colombeau/quadrature.hpp"
#include "colombeau/real.hpp"

namespace colombeau {

enum class SupportKind { compact, left_half, right_half, global_span };
enum class CostHint { closed_form, single_integral, nested_integral };

inline bool bounded_below(SupportKind k) {
    return k == SupportKind::compact || k == SupportKind::right_half;
}
inline bool bounded_above(SupportKind k) {
    return k == SupportKind::compact || k == SupportKind::left_half;
}
inline SupportKind support_from_bounds(bool below, bool above) {
    if (below && above)
        return SupportKind::compact;
    if (below)
        return SupportKind::right_half;
    if (above)
        return SupportKind::left_half;
    return SupportKind::global_span;
}

struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class R>
struct Representative {
    // eval(sigma, x, tol): tol budgets any internal quadrature
    std::function<cplx<R>(R, R, R)> eval;
    SupportKind support = SupportKind::compact;
    R radius{}; // zero outside the declared support, boundaries at +-radius*sigma
    std::function<std::vector<R>(R)> breakpoints; // definition-change points in x
    CostHint cost = CostHint::closed_form;
};

// exact harmonic number kappa_p = sum_{k=1}^p 1/k; kappa_0 = 0
struct Harmonic {
    long long num = 0;
    long long den = 1;
    template <class R>
    R value() const {
        return R(num) / R(den);
    }
};

inline Harmonic harmonic(int p) {
    if (p < 0)
        throw std::invalid_argument("harmonic: p must be >= 0");
    Harmonic h{0, 1};
    for (int k = 1; k <= p; ++k) {
        h.num = h.num * k + h.den;
        h.den *= k;
        const long long g = std::gcd(h.num, h.den);
        h.num /= g;
        h.den /= g;
    }
    return h;
}

namespace detail {

template <class R>
std::function<std::vector<R>(R)> scaled_edges(std::shared_ptr<const KernelFamily<R>> fam) {
    return [fam](R sigma) {
        std::vector<R> out;
        for (R e : fam->edges())
            out.push_back(sigma * e);
        return out;
    };
}

template <class R>
cplx<R> log_convolution(const KernelFamily<R>& fam, R sigma, R w, int order, R tol) {
    // int_{-l}^{min(w,l)} ln(w - v) K^(order)(sigma, v) dv, evaluated in the
    // distance variable tau = w - v so the log argument never cancels
    const R l = fam.support_radius();
    if (w <= -l)
        return {};
    const R lo = std::max(w - l, R(0));
    const R hi = w + l;
    std::vector<Breakpoint<R>> bps;
    for (R e : fam.edges())
        bps.emplace_back(w - e);
    if (w <= l)
        bps.emplace_back(R(0), Endpoint::log_singular);
    QuadOptions<R> opts;
    opts.tol = tol;
    auto res = integrate<R>(
        [&fam, sigma, w, order](R tau) { return std::log(tau) * fam.eval(sigma, w - tau, order); },
        lo, hi, bps, opts);
    if (!res.converged)
        throw quadrature_error("log convolution integral did not converge");
    return res.value;
}

} // namespace detail

// model of delta^(p): the strict delta net scaled to derivative order p
template <class R>
Representative<R> rep_delta(std::shared_ptr<const KernelFamily<R>> fam, int p) {
    if (p < 0 || p > fam->max_order() - 1)
        throw std::invalid_argument("rep_delta: derivative order out of range");
    const R l = fam->support_radius();
    return {[fam, p, l](R sigma, R x, R) -> cplx<R> {
                const R w = x / sigma;
                if (std::abs(w) > l)
                    return {};
                return std::pow(sigma, R(-p - 1)) * fam->eval(sigma, w, p);
            },
            SupportKind::compact, l, detail::scaled_edges(fam), CostHint::closed_form};
}

template <class R>
Representative<R> mirror(const Representative<R>& r) {
    SupportKind k = support_from_bounds(bounded_above(r.support), bounded_below(r.support));
    auto bp = r.breakpoints;
    return {[ev = r.eval](R sigma, R x, R tol) { return ev(sigma, -x, tol); }, k, r.radius,
            [bp](R sigma) {
                auto pts = bp(sigma);
                for (auto& p : pts)
                    p = -p;
                std::sort(pts.begin(), pts.end());
                return pts;
            },
            r.cost};
}

// model of the step function (checked: of its reflection), constant tails
template <class R>
Representative<R> rep_heaviside(std::shared_ptr<const KernelFamily<R>> fam, bool checked = false) {
    const R l = fam->support_radius();
    Representative<R> h{[fam, l](R sigma, R x, R) -> cplx<R> {
                            const R w = x / sigma;
                            if (w <= -l)
                                return {};
                            if (w >= l)
                                return {R(1), R(0)};
                            return fam->cum(sigma, w, 0);
                        },
                        SupportKind::right_half, l, detail::scaled_edges(fam),
                        CostHint::single_integral};
    return checked ? mirror(h) : h;
}

// model of x_+^a (sign=-1: x_-^a), a > -1
template <class R>
Representative<R> rep_x_power(std::shared_ptr<const KernelFamily<R>> fam, int sign, R a) {
    if (!(a > R(-1)))
        throw std::invalid_argument("rep_x_power: requires a > -1");
    const R l = fam->support_radius();
    const bool integral_exponent = std::floor(a) == a;
    const int ia = static_cast<int>(a);
    Representative<R> plus;
    if (integral_exponent && ia <= 2) {
        // binomial expansion over tabulated cumulative moments
        plus = {[fam, l, ia](R sigma, R x, R) -> cplx<R> {
                    const R w = x / sigma;
                    if (w <= -l)
                        return {};
                    // (w - v)^ia expanded over the tabulated cumulative moments
                    cplx<R> acc{};
                    for (int k = 0; k <= ia; ++k) {
                        R c = R(1);
                        for (int i = 0; i < k; ++i)
                            c *= R(ia - i) / R(i + 1);
                        acc += c * std::pow(w, R(ia - k)) * (k % 2 ? R(-1) : R(1)) *
                               fam->cum(sigma, w, k);
                    }
                    return std::pow(sigma, R(ia)) * acc;
                },
                SupportKind::right_half, l, detail::scaled_edges(fam), CostHint::single_integral};
    } else {
        plus = {[fam, l, a, integral_exponent](R sigma, R x, R tol) -> cplx<R> {
                    const R w = x / sigma;
                    if (w <= -l)
                        return {};
                    // tau = w - v keeps the algebraic factor exact at the endpoint
                    const R lo = std::max(w - l, R(0));
                    std::vector<Breakpoint<R>> bps;
                    for (R e : fam->edges())
                        bps.emplace_back(w - e);
                    if (!integral_exponent && w <= l)
                        bps.emplace_back(R(0), Endpoint::algebraic, a);
                    QuadOptions<R> opts;
                    opts.tol = tol;
                    auto res = integrate<R>(
                        [&](R tau) { return std::pow(tau, a) * fam->eval(sigma, w - tau, 0); },
                        lo, w + l, bps, opts);
                    if (!res.converged)
                        throw quadrature_error("x_+^a convolution did not converge");
                    return std::pow(sigma, a) * res.value;
                },
                SupportKind::right_half, l, detail::scaled_edges(fam), CostHint::single_integral};
    }
    return sign >= 0 ? plus : mirror(plus);
}

// model of ln x_+ (sign=-1: ln x_-)
template <class R>
Representative<R> rep_ln(std::shared_ptr<const KernelFamily<R>> fam, int sign) {
    const R l = fam->support_radius();
    Representative<R> plus{[fam, l](R sigma, R x, R tol) -> cplx<R> {
                               const R w = x / sigma;
                               if (w <= -l)
                                   return {};
                               const cplx<R> mass = fam->cum(sigma, std::min(w, l), 0);
                               return std::log(sigma) * mass +
                                      detail::log_convolution(*fam, sigma, w, 0, tol);
                           },
                           SupportKind::right_half, l, detail::scaled_edges(fam),
                           CostHint::single_integral};
    return sign >= 0 ? plus : mirror(plus);
}

// model of x_+^(-p-1) (sign=-1: x_-^(-p-1)) via the Hoermander-type
// regularization lifted to the kernel family
template <class R>
Representative<R> rep_x_neg_int(std::shared_ptr<const KernelFamily<R>> fam, int sign, int p) {
    if (p < 0)
        throw std::invalid_argument("rep_x_neg_int: p must be >= 0");
    if (p + 1 > fam->max_order() - 1)
        throw std::invalid_argument("rep_x_neg_int: derivative order too high");
    const R l = fam->support_radius();
    R fact = R(1);
    for (int k = 2; k <= p; ++k)
        fact *= R(k);
    const R kappa = harmonic(p).template value<R>();
    const R front = (p % 2 ? R(-1) : R(1)) / fact;
    Representative<R> plus{
        [fam, l, p, kappa, front](R sigma, R x, R tol) -> cplx<R> {
            const R w = x / sigma;
            if (w <= -l)
                return {};
            cplx<R> acc = detail::log_convolution(*fam, sigma, w, p + 1, tol);
            if (std::abs(w) <= l)
                acc += (std::log(sigma) + kappa) * fam->eval(sigma, w, p);
            return front * std::pow(sigma, R(-p - 1)) * acc;
        },
        SupportKind::right_half, l, detail::scaled_edges(fam), CostHint::nested_integral};
    return sign >= 0 ? plus : mirror(plus);
}

// pointwise product with an optional scalar factor
template <class R>
Representative<R> product(std::vector<Representative<R>> reps, cplx<R> coeff = {1, 0}) {
    if (reps.empty())
        throw std::invalid_argument("product: empty representative list");
    bool below = false, above = false;
    R radius = 0;
    CostHint cost = CostHint::closed_form;
    for (const auto& r : reps) {
        below = below || bounded_below(r.support);
        above = above || bounded_above(r.support);
        radius = std::max(radius, r.radius);
        if (static_cast<int>(r.cost) > static_cast<int>(cost))
            cost = r.cost;
    }
    auto bps = [reps](R sigma) {
        std::vector<R> out;
        for (const auto& r : reps) {
            auto p = r.breakpoints(sigma);
            out.insert(out.end(), p.begin(), p.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return {[reps, coeff](R sigma, R x, R tol) {
                cplx<R> acc = coeff;
                for (const auto& r : reps) {
                    acc *= r.eval(sigma, x, tol);
                    if (acc == cplx<R>{})
                        return acc;
                }
                return acc;
            },
            support_from_bounds(below, above), radius, bps, cost};
}

// linear combination sum_i coeff_i rep_i
template <class R>
Representative<R> linear_combination(std::vector<std::pair<cplx<R>, Representative<R>>> terms) {
    if (terms.empty())
        throw std::invalid_argument("linear_combination: empty term list");
    bool below = true, above = true;
    R radius = 0;
    CostHint cost = CostHint::closed_form;
    for (const auto& [c, r] : terms) {
        below = below && bounded_below(r.support);
        above = above && bounded_above(r.support);
        radius = std::max(radius, r.radius);
        if (static_cast<int>(r.cost) > static_cast<int>(cost))
            cost = r.cost;
    }
    auto bps = [terms](R sigma) {
        std::vector<R> out;
        for (const auto& [c, r] : terms) {
            auto p = r.breakpoints(sigma);
            out.insert(out.end(), p.begin(), p.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return {[terms](R sigma, R x, R tol) {
                cplx<R> acc{};
                for (const auto& [c, r] : terms)
                    acc += c * r.eval(sigma, x, tol);
                return acc;
            },
            support_from_bounds(below, above), radius, bps, cost};
}

enum class Derived { x_neg, x_neg_sgn, x_i0_plus, x_i0_minus, ln_abs, ln_sgn };

// exact-coefficient combinations of the one-sided models:
//   x^-p            = x_+^-p + (-1)^p x_-^-p
//   x^-p sgn x      = x_+^-p - (-1)^p x_-^-p
//   (x +- i0)^-p    = x^-p -+ (-1)^(p-1) i pi / (p-1)! delta^(p-1)
//   ln|x|, ln|x|sgn = ln x_+ +- ln x_-
template <class R>
Representative<R> rep_derived(std::shared_ptr<const KernelFamily<R>> fam, Derived which, int p = 0) {
    using Term = std::pair<cplx<R>, Representative<R>>;
    switch (which) {
    case Derived::ln_abs:
        return linear_combination<R>({Term{{1, 0}, rep_ln(fam, +1)}, Term{{1, 0}, rep_ln(fam, -1)}});
    case Derived::ln_sgn:
        return linear_combination<R>({Term{{1, 0}, rep_ln(fam, +1)}, Term{{-1, 0}, rep_ln(fam, -1)}});
    default:
        break;
    }
    if (p < 1)
        throw std::invalid_argument("rep_derived: power must be >= 1");
    const R par = (p % 2 == 0) ? R(1) : R(-1); // (-1)^p
    auto xp = rep_x_neg_int(fam, +1, p - 1);
    auto xm = rep_x_neg_int(fam, -1, p - 1);
    switch (which) {
    case Derived::x_neg:
        return linear_combination<R>({Term{{1, 0}, xp}, Term{{par, 0}, xm}});
    case Derived::x_neg_sgn:
        return linear_combination<R>({Term{{1, 0}, xp}, Term{{-par, 0}, xm}});
    case Derived::x_i0_plus:
    case Derived::x_i0_minus: {
        auto base = linear_combination<R>({Term{{1, 0}, xp}, Term{{par, 0}, xm}});
        R fact = 1;
        for (int k = 2; k <= p - 1; ++k)
            fact *= R(k);
        // -+ (-1)^(p-1) i pi/(p-1)! delta^(p-1); upper sign for x + i0
        const R mag = pi_v<R> / fact * ((p - 1) % 2 ? R(-1) : R(1));
        const cplx<R> c = (which == Derived::x_i0_plus) ? cplx<R>{0, -mag} : cplx<R>{0, mag};
        return linear_combination<R>({Term{{1, 0}, base}, Term{c, rep_delta(fam, p - 1)}});
    }
    default:
        throw std::invalid_argument("rep_derived: unknown combination");
    }
}

} // namespace colombeau
