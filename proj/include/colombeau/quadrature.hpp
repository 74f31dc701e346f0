// Adaptive complex-valued quadrature: 8-point Gauss-Legendre panels with an
// embedded 4-point error estimate, forced breakpoints, and substitution
// handling for logarithmic / algebraic endpoint singularities.
//
// Panel refinement is driven by a worst-first heap; the final reduction is
// done in interval order with compensated summation so results are
// reproducible for identical inputs.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "colombeau/gauss.hpp"
#include "colombeau/real.hpp"

namespace colombeau {

enum class Endpoint { none, log_singular, algebraic };

template <class R>
struct Breakpoint {
    R x{};
    Endpoint kind = Endpoint::none;
    R exponent{};   // algebraic exponent, > -1

    Breakpoint() = default;
    Breakpoint(R x_, Endpoint k = Endpoint::none, R e = R(0)) : x(x_), kind(k), exponent(e) {}
};

template <class R>
struct QuadResult {
    cplx<R> value{};
    R error_estimate{};
    R roundoff{};          // accumulated |w f| * machine epsilon
    int panels_used = 0;
    bool converged = false;
};

template <class R>
struct QuadOptions {
    R tol = R(1e-10);
    int max_panels = 6000;
};

// Single 8-point panel; exact for polynomials through degree 15.
template <class R, class F>
cplx<R> gl8_panel(F&& f, R a, R b) {
    R abs_sum{};
    return gauss_apply<Gauss8<R>>(f, a, b, abs_sum);
}

namespace detail {

template <class R>
struct Segment {
    std::function<cplx<R>(R)> f;
    R a{}, b{};
};

template <class R>
struct Panel {
    int seg = 0;
    R a{}, b{};
    cplx<R> val{};
    R err{};
    R abs_sum{};
};

template <class R>
Panel<R> eval_panel(const std::vector<Segment<R>>& segs, int si, R a, R b) {
    Panel<R> p;
    p.seg = si;
    p.a = a;
    p.b = b;
    const auto& f = segs[static_cast<std::size_t>(si)].f;

    const R mid = (a + b) / 2;
    const R hl = (b - a) / 2;
    std::array<cplx<R>, 8> vals;
    cplx<R> acc{};
    R asum{};
    for (std::size_t i = 0; i < 4; ++i) {
        const R dx = hl * Gauss8<R>::x[i];
        vals[2 * i] = f(mid - dx);
        vals[2 * i + 1] = f(mid + dx);
        acc += Gauss8<R>::w[i] * (vals[2 * i] + vals[2 * i + 1]);
        asum += Gauss8<R>::w[i] * (std::abs(vals[2 * i]) + std::abs(vals[2 * i + 1]));
    }
    const cplx<R> v8 = hl * acc;
    p.abs_sum = hl * asum;

    R dummy{};
    const cplx<R> v4 = gauss_apply<Gauss4<R>>(f, a, b, dummy);

    // scale of variation around the mean, for the QUADPACK-style estimate
    const cplx<R> mean = v8 / (b - a);
    R resasc{};
    for (std::size_t i = 0; i < 4; ++i)
        resasc += Gauss8<R>::w[i] * (std::abs(vals[2 * i] - mean) + std::abs(vals[2 * i + 1] - mean));
    resasc *= hl;

    const R d = std::abs(v8 - v4);
    p.val = v8;
    if (resasc > R(0) && d > R(0)) {
        const R ratio = R(200) * d / resasc;
        p.err = resasc * std::min(R(1), std::sqrt(ratio) * ratio);
    } else {
        p.err = d;
    }
    if (!finite(v8) || !std::isfinite(p.err)) {
        // a non-finite sample: drop the value, flag for refinement
        p.val = {};
        p.err = std::numeric_limits<R>::max() / 1024;
        p.abs_sum = R(0);
    }
    return p;
}

// s-range of the exp substitution around a log endpoint
template <class R>
R log_tail_extent() {
    return -std::log(std::numeric_limits<R>::epsilon()) * R(1.4) + R(10);
}

} // namespace detail

// Integrates f over [a,b].  Interior breakpoints force panel boundaries;
// breakpoints tagged log_singular / algebraic get the regularizing
// substitution t = exp(-s) resp. t = s^(1/(1+exponent)) on the adjacent
// segment side.  Convergence target: sum of panel error estimates below
// tol * max(1, |integral|).
template <class R>
QuadResult<R> integrate(const std::function<cplx<R>(R)>& f, R a, R b,
                        const std::vector<Breakpoint<R>>& breaks,
                        const QuadOptions<R>& opts = {}) {
    if (!(a < b))
        throw std::invalid_argument("integrate: requires a < b");
    const R span = b - a;

    std::vector<Breakpoint<R>> pts;
    pts.emplace_back(a);
    for (const auto& bp : breaks)
        if (bp.x > a && bp.x < b)
            pts.push_back(bp);
    pts.emplace_back(b);
    // also honor singular tags sitting exactly on the interval ends
    for (const auto& bp : breaks) {
        if (bp.kind == Endpoint::none)
            continue;
        if (bp.x == a)
            pts.front() = bp;
        else if (bp.x == b)
            pts.back() = bp;
    }
    std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
    // merge near-coincident points, keeping any singular tag
    std::vector<Breakpoint<R>> merged;
    for (const auto& p : pts) {
        if (!merged.empty() && p.x - merged.back().x <= span * std::numeric_limits<R>::epsilon() * 8) {
            if (p.kind != Endpoint::none)
                merged.back() = p;
        } else {
            merged.push_back(p);
        }
    }

    std::vector<detail::Segment<R>> segs;
    auto add_plain = [&](R lo, R hi) { segs.push_back({f, lo, hi}); };
    auto add_left_singular = [&](const Breakpoint<R>& bp, R hi) {
        const R x0 = bp.x;
        const R h = hi - x0;
        if (h <= R(0))
            return;
        if (bp.kind == Endpoint::log_singular) {
            const R s0 = -std::log(h);
            segs.push_back({[f, x0](R s) {
                                const R t = std::exp(-s);
                                return f(x0 + t) * t;
                            },
                            s0, s0 + detail::log_tail_extent<R>()});
        } else {
            const R q = R(1) / (R(1) + bp.exponent);
            segs.push_back({[f, x0, q](R s) {
                                const R t = std::pow(s, q);
                                return f(x0 + t) * q * std::pow(s, q - R(1));
                            },
                            R(0), std::pow(h, R(1) / q)});
        }
    };
    auto add_right_singular = [&](R lo, const Breakpoint<R>& bp) {
        const R x1 = bp.x;
        const R h = x1 - lo;
        if (h <= R(0))
            return;
        if (bp.kind == Endpoint::log_singular) {
            const R s0 = -std::log(h);
            segs.push_back({[f, x1](R s) {
                                const R t = std::exp(-s);
                                return f(x1 - t) * t;
                            },
                            s0, s0 + detail::log_tail_extent<R>()});
        } else {
            const R q = R(1) / (R(1) + bp.exponent);
            segs.push_back({[f, x1, q](R s) {
                                const R t = std::pow(s, q);
                                return f(x1 - t) * q * std::pow(s, q - R(1));
                            },
                            R(0), std::pow(h, R(1) / q)});
        }
    };

    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const auto& lp = merged[i];
        const auto& rp = merged[i + 1];
        const bool ls = lp.kind != Endpoint::none;
        const bool rs = rp.kind != Endpoint::none;
        if (ls && rs) {
            const R mid = (lp.x + rp.x) / 2;
            add_left_singular(lp, mid);
            add_right_singular(mid, rp);
        } else if (ls) {
            add_left_singular(lp, rp.x);
        } else if (rs) {
            add_right_singular(lp.x, rp);
        } else {
            add_plain(lp.x, rp.x);
        }
    }

    using P = detail::Panel<R>;
    auto worse = [](const P& l, const P& r) {
        if (l.err != r.err)
            return l.err < r.err;
        if (l.seg != r.seg)
            return l.seg > r.seg;
        return l.a > r.a;
    };
    std::priority_queue<P, std::vector<P>, decltype(worse)> heap(worse);
    std::vector<P> frozen; // panels too narrow to split further

    cplx<R> running{};
    R err_sum{};
    R abs_total{};
    int panels = 0;
    for (int si = 0; si < static_cast<int>(segs.size()); ++si) {
        P p = detail::eval_panel(segs, si, segs[static_cast<std::size_t>(si)].a,
                                 segs[static_cast<std::size_t>(si)].b);
        running += p.val;
        err_sum += p.err;
        abs_total += p.abs_sum;
        ++panels;
        heap.push(p);
    }

    // refine until the tolerance is met or the error sits at the roundoff
    // floor of the accumulated |w f| mass; beyond that splitting cannot help
    auto target = [&] {
        const R floor = abs_total * std::numeric_limits<R>::epsilon() * 16;
        return std::max(opts.tol * std::max(R(1), std::abs(running)), floor);
    };
    while (err_sum > target() && panels < opts.max_panels && !heap.empty()) {
        P top = heap.top();
        heap.pop();
        const R seg_span = segs[static_cast<std::size_t>(top.seg)].b -
                           segs[static_cast<std::size_t>(top.seg)].a;
        const R mid = (top.a + top.b) / 2;
        if (!(top.b - top.a > seg_span * std::numeric_limits<R>::epsilon() * 64) ||
            mid <= top.a || mid >= top.b) {
            frozen.push_back(top);
            continue;
        }
        P left = detail::eval_panel(segs, top.seg, top.a, mid);
        P right = detail::eval_panel(segs, top.seg, mid, top.b);
        running += left.val + right.val - top.val;
        err_sum += left.err + right.err - top.err;
        abs_total += left.abs_sum + right.abs_sum - top.abs_sum;
        ++panels;
        heap.push(left);
        heap.push(right);
    }

    std::vector<P> all;
    all.reserve(static_cast<std::size_t>(panels));
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const P& l, const P& r) {
        if (l.seg != r.seg)
            return l.seg < r.seg;
        return l.a < r.a;
    });

    AccumC<R> vsum;
    Accum<R> esum;
    R abs_acc{};
    for (const auto& p : all) {
        vsum.add(p.val);
        esum.add(p.err);
        abs_acc += p.abs_sum;
    }

    QuadResult<R> out;
    out.value = vsum.total();
    out.error_estimate = esum.total();
    out.roundoff = abs_acc * std::numeric_limits<R>::epsilon() * 4;
    out.panels_used = panels;
    // slack absorbs the drift between the incremental loop bookkeeping and
    // the compensated re-summation above
    out.converged =
        out.error_estimate <=
        R(1.5) * std::max(opts.tol * std::max(R(1), std::abs(out.value)),
                          abs_acc * std::numeric_limits<R>::epsilon() * 16);
    return out;
}

} // namespace colombeau
