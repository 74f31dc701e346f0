// Model mollifier D(sigma, x) = f(x) + lambda(sigma) g(x) and moment-corrected
// mollifiers for canonical-embedding runs.  Both are exposed through the
// KernelFamily interface the representatives are built on: pointwise
// derivatives, cumulative moments from the left support edge, and the list of
// structural breakpoints.
//
// lambda(sigma)^2 = (sigma - int f^2) / int g^2, principal root; for small
// sigma this is purely imaginary, so all downstream arithmetic is complex.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "colombeau/bump.hpp"
#include "colombeau/gauss.hpp"
#include "colombeau/quadrature.hpp"
#include "colombeau/real.hpp"

namespace colombeau {

// Cumulative moments of one bump kernel on a fixed 32-panel grid; partial
// panels are finished with a single 16-point rule, which is exact to
// working precision for these integrands.
template <class R>
class CumTable {
public:
    static constexpr int n_panels = 32;
    static constexpr int n_moments = 5;

    explicit CumTable(const BumpKernel<R>& k) : k_(k) {
        const R lo = k.lo(), hi = k.hi();
        for (int j = 0; j <= n_panels; ++j)
            edge_[static_cast<std::size_t>(j)] = lo + (hi - lo) * R(j) / R(n_panels);
        for (int m = 0; m < n_moments; ++m)
            cum_[static_cast<std::size_t>(m)][0] = R(0);
        for (int j = 0; j < n_panels; ++j) {
            for (int m = 0; m < n_moments; ++m) {
                R asum{};
                const R v = gauss_apply<Gauss16<R>>(
                    [&](R u) { return moment_integrand(u, m); },
                    edge_[static_cast<std::size_t>(j)], edge_[static_cast<std::size_t>(j) + 1], asum);
                cum_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j) + 1] =
                    cum_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] + v;
            }
        }
    }

    // int_{lo}^{min(w,hi)} u^moment k(u) du; zero when w <= lo
    R partial(int moment, R w) const {
        const R lo = k_.lo(), hi = k_.hi();
        if (w <= lo)
            return R(0);
        if (w >= hi)
            return cum_[static_cast<std::size_t>(moment)][n_panels];
        const R rel = (w - lo) / (hi - lo) * R(n_panels);
        int j = std::min(static_cast<int>(rel), n_panels - 1);
        const R a = edge_[static_cast<std::size_t>(j)];
        R base = cum_[static_cast<std::size_t>(moment)][static_cast<std::size_t>(j)];
        if (w - a <= (hi - lo) * std::numeric_limits<R>::epsilon())
            return base;
        R asum{};
        return base + gauss_apply<Gauss16<R>>(
                          [&](R u) { return moment_integrand(u, moment); }, a, w, asum);
    }

    R full(int moment) const { return cum_[static_cast<std::size_t>(moment)][n_panels]; }
    const BumpKernel<R>& kernel() const { return k_; }
    void rescale(R c) {
        k_.amplitude *= c;
        for (auto& row : cum_)
            for (auto& v : row)
                v *= c;
    }

private:
    R moment_integrand(R u, int m) const {
        R p = k_.eval(u, 0);
        for (int i = 0; i < m; ++i)
            p *= u;
        return p;
    }

    BumpKernel<R> k_;
    std::array<R, n_panels + 1> edge_{};
    std::array<std::array<R, n_panels + 1>, n_moments> cum_{};
};

// One side of the kernel algebra: a bump sum plus its cumulative tables.
template <class R>
struct TabulatedSum {
    KernelSum<R> sum;
    std::vector<CumTable<R>> tables;

    explicit TabulatedSum(KernelSum<R> s) : sum(std::move(s)) {
        for (const auto& k : sum.parts)
            tables.emplace_back(k);
    }
    R eval(R u, int order) const { return sum.eval(u, order); }
    R partial(int moment, R w) const {
        R acc{};
        for (const auto& t : tables)
            acc += t.partial(moment, w);
        return acc;
    }
    R full(int moment) const {
        R acc{};
        for (const auto& t : tables)
            acc += t.full(moment);
        return acc;
    }
    void rescale(R c) {
        sum.scale(c);
        for (auto& t : tables)
            t.rescale(c);
    }
};

// sigma-parameterized even kernel with unit mass; the base every
// representative is built on.
template <class R>
struct KernelFamily {
    virtual ~KernelFamily() = default;
    virtual cplx<R> eval(R sigma, R u, int order) const = 0;
    // int_{-l}^{min(w,l)} u^moment K(sigma,u) du
    virtual cplx<R> cum(R sigma, R w, int moment) const = 0;
    virtual R support_radius() const = 0;
    virtual std::vector<R> edges() const = 0;
    virtual int max_order() const = 0;
};

template <class R>
class ModelMollifier final : public KernelFamily<R> {
public:
    ModelMollifier(TabulatedSum<R> f, TabulatedSum<R> g, R If2, R Ig2)
        : f_(std::move(f)), g_(std::move(g)), If2_(If2), Ig2_(Ig2) {
        l_ = std::max(std::max(std::abs(f_.sum.lo()), f_.sum.hi()),
                      std::max(std::abs(g_.sum.lo()), g_.sum.hi()));
        edges_ = collect_edges();
    }

    // principal root of (sigma - If2)/Ig2; purely imaginary below If2
    cplx<R> lambda(R sigma) const {
        if (!(sigma > R(0)))
            throw std::invalid_argument("lambda: sigma must be positive");
        const R ratio = (sigma - If2_) / Ig2_;
        if (ratio >= R(0))
            return {std::sqrt(ratio), R(0)};
        return {R(0), std::sqrt(-ratio)};
    }

    cplx<R> eval(R sigma, R u, int order) const override {
        if (order > bump_max_order)
            throw std::invalid_argument("ModelMollifier: derivative order too high");
        return cplx<R>(f_.eval(u, order), R(0)) + lambda(sigma) * g_.eval(u, order);
    }
    cplx<R> cum(R sigma, R w, int moment) const override {
        return cplx<R>(f_.partial(moment, w), R(0)) + lambda(sigma) * g_.partial(moment, w);
    }
    R support_radius() const override { return l_; }
    std::vector<R> edges() const override { return edges_; }
    int max_order() const override { return bump_max_order; }

    R integral_f() const { return f_.full(0); }
    R integral_g() const { return g_.full(0); }
    R integral_f2() const { return If2_; }
    R integral_g2() const { return Ig2_; }
    const KernelSum<R>& f() const { return f_.sum; }
    const KernelSum<R>& g() const { return g_.sum; }

private:
    std::vector<R> collect_edges() const {
        std::vector<R> e;
        for (const auto& k : f_.sum.parts) {
            e.push_back(k.lo());
            e.push_back(k.hi());
        }
        for (const auto& k : g_.sum.parts) {
            e.push_back(k.lo());
            e.push_back(k.hi());
        }
        e.push_back(-l_);
        e.push_back(l_);
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        return e;
    }

    TabulatedSum<R> f_, g_;
    R If2_{}, Ig2_{}, l_{};
    std::vector<R> edges_;
};

namespace detail {

template <class R>
bool is_even_sum(const KernelSum<R>& s, R tol) {
    for (const auto& k : s.parts) {
        if (std::abs(k.center) <= tol)
            continue;
        bool found = false;
        for (const auto& m : s.parts) {
            if (std::abs(m.center + k.center) <= tol &&
                std::abs(m.halfwidth - k.halfwidth) <= tol &&
                std::abs(m.amplitude - k.amplitude) <= tol * std::max(R(1), std::abs(k.amplitude))) {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

template <class R>
void check_disjoint(const std::vector<BumpKernel<R>>& all) {
    std::vector<std::pair<R, R>> iv;
    for (const auto& k : all)
        iv.emplace_back(k.lo(), k.hi());
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 0; i + 1 < iv.size(); ++i) {
        // touching supports are fine; the product is still pointwise zero
        if (iv[i].second > iv[i + 1].first + std::numeric_limits<R>::epsilon() * 16)
            throw std::invalid_argument("build_model_mollifier: overlapping kernel supports");
    }
}

template <class R>
R integral_of_square(const KernelSum<R>& s) {
    if (s.parts.empty())
        return R(0);
    std::vector<Breakpoint<R>> bps;
    for (const auto& k : s.parts) {
        bps.emplace_back(k.lo());
        bps.emplace_back(k.hi());
    }
    QuadOptions<R> opts;
    opts.tol = R(1e-13);
    auto r = integrate<R>([&](R u) { return cplx<R>(s.eval(u, 0) * s.eval(u, 0), R(0)); },
                          s.lo(), s.hi(), bps, opts);
    return r.value.real();
}

} // namespace detail

// f is rescaled to unit integral; the negative-amplitude group of g is
// rescaled so that int g = 0 holds structurally.
template <class R>
std::shared_ptr<const ModelMollifier<R>> build_model_mollifier(KernelSum<R> f_spec,
                                                               KernelSum<R> g_spec) {
    const R tol = R(1e-12);
    if (f_spec.parts.empty())
        throw std::invalid_argument("build_model_mollifier: empty f");
    if (!detail::is_even_sum(f_spec, tol))
        throw std::invalid_argument("build_model_mollifier: f is not even");
    if (!detail::is_even_sum(g_spec, tol))
        throw std::invalid_argument("build_model_mollifier: g is not even");

    std::vector<BumpKernel<R>> all = f_spec.parts;
    all.insert(all.end(), g_spec.parts.begin(), g_spec.parts.end());
    detail::check_disjoint(all);

    TabulatedSum<R> f(std::move(f_spec));
    const R If_raw = f.full(0);
    if (std::abs(If_raw) < tol)
        throw std::invalid_argument("build_model_mollifier: int f vanishes");
    f.rescale(R(1) / If_raw);

    TabulatedSum<R> g(std::move(g_spec));
    if (!g.sum.parts.empty()) {
        R pos{}, neg{};
        for (std::size_t i = 0; i < g.sum.parts.size(); ++i) {
            const R contrib = g.tables[i].full(0);
            (g.sum.parts[i].amplitude >= R(0) ? pos : neg) += contrib;
        }
        if (std::abs(pos + neg) > tol) {
            if (std::abs(neg) < tol)
                throw std::invalid_argument(
                    "build_model_mollifier: g has no negative part to balance against");
            const R beta = pos / (-neg);
            for (std::size_t i = 0; i < g.sum.parts.size(); ++i)
                if (g.sum.parts[i].amplitude < R(0)) {
                    g.sum.parts[i].amplitude *= beta;
                    g.tables[i].rescale(beta);
                }
        }
    }

    const R If2 = detail::integral_of_square(f.sum);
    const R Ig2 = detail::integral_of_square(g.sum);
    if (!(Ig2 > tol))
        throw std::invalid_argument("build_model_mollifier: degenerate g (int g^2 = 0)");

    return std::make_shared<ModelMollifier<R>>(std::move(f), std::move(g), If2, Ig2);
}

// Spec of the default geometry: f on [-1,1]; g = bump pairs at +-3 minus
// pairs at +-6, all halfwidth 1; support radius 7.
template <class R>
std::shared_ptr<const ModelMollifier<R>> default_model_mollifier() {
    KernelSum<R> f{{make_bump<R>(0, 1)}};
    KernelSum<R> g{{make_bump<R>(3, 1), make_bump<R>(-3, 1),
                    make_bump<R>(6, 1, R(-1)), make_bump<R>(-6, 1, R(-1))}};
    return build_model_mollifier<R>(std::move(f), std::move(g));
}

// A_q moment mollifier: even dilated-bump combination with
// int x^j phi = delta_{0j} for j = 0..q.
template <class R>
class MomentMollifier final : public KernelFamily<R> {
public:
    MomentMollifier(TabulatedSum<R> phi, int q) : phi_(std::move(phi)), q_(q) {
        s_ = std::max(std::abs(phi_.sum.lo()), phi_.sum.hi());
        for (const auto& k : phi_.sum.parts) {
            edges_.push_back(k.lo() / s_);
            edges_.push_back(k.hi() / s_);
        }
        edges_.push_back(R(-1));
        edges_.push_back(R(1));
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    // family kernel K(u) = s * phi(s u); sigma-independent by construction
    cplx<R> eval(R /*sigma*/, R u, int order) const override {
        return cplx<R>(std::pow(s_, R(order + 1)) * phi_.eval(s_ * u, order), R(0));
    }
    cplx<R> cum(R /*sigma*/, R w, int moment) const override {
        return cplx<R>(std::pow(s_, R(-moment)) * phi_.partial(moment, s_ * w), R(0));
    }
    R support_radius() const override { return R(1); }
    std::vector<R> edges() const override { return edges_; }
    int max_order() const override { return bump_max_order; }

    int q() const { return q_; }
    R moment(int j) const { return phi_.full(j); }
    const KernelSum<R>& phi() const { return phi_.sum; }

private:
    TabulatedSum<R> phi_;
    int q_;
    R s_{};
    std::vector<R> edges_;
};

// Solves the even-moment system over dilated bumps centered at 0.  Odd
// moments vanish by symmetry, so only j = 0,2,..<=q constrain the system.
template <class R>
std::shared_ptr<const MomentMollifier<R>> make_moment_mollifier(
    int q, std::vector<R> halfwidths = {}) {
    if (q < 0)
        throw std::invalid_argument("make_moment_mollifier: q must be >= 0");
    const int n = q / 2 + 1; // number of even-moment constraints
    if (2 * (n - 1) >= CumTable<R>::n_moments)
        throw std::invalid_argument("make_moment_mollifier: q too large for moment tables");
    if (halfwidths.empty())
        for (int j = 0; j < n; ++j)
            halfwidths.push_back(R(1) / R(j + 1));
    if (static_cast<int>(halfwidths.size()) != n)
        throw std::invalid_argument("make_moment_mollifier: need one halfwidth per even moment");

    std::vector<CumTable<R>> base;
    for (R h : halfwidths)
        base.emplace_back(make_bump<R>(R(0), h));

    // A[k][j] = int t^(2k) K(t/h_j) dt, rhs = delta_{k0}
    std::vector<std::vector<R>> A(static_cast<std::size_t>(n),
                                  std::vector<R>(static_cast<std::size_t>(n)));
    std::vector<R> rhs(static_cast<std::size_t>(n), R(0));
    rhs[0] = R(1);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            A[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                base[static_cast<std::size_t>(j)].full(2 * k);

    // Gaussian elimination with partial pivoting on the tiny system
    std::vector<R> c(static_cast<std::size_t>(n));
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                piv = r;
        if (std::abs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < R(1e-14))
            throw std::invalid_argument("make_moment_mollifier: singular moment system");
        std::swap(A[static_cast<std::size_t>(piv)], A[static_cast<std::size_t>(col)]);
        std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
        for (int r = col + 1; r < n; ++r) {
            const R m = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                        A[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int cc = col; cc < n; ++cc)
                A[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    m * A[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
            rhs[static_cast<std::size_t>(r)] -= m * rhs[static_cast<std::size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        R acc = rhs[static_cast<std::size_t>(r)];
        for (int cc = r + 1; cc < n; ++cc)
            acc -= A[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] *
                   c[static_cast<std::size_t>(cc)];
        c[static_cast<std::size_t>(r)] = acc / A[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
    }

    KernelSum<R> phi;
    for (int j = 0; j < n; ++j)
        phi.parts.push_back(make_bump<R>(R(0), halfwidths[static_cast<std::size_t>(j)],
                                         c[static_cast<std::size_t>(j)]));
    return std::make_shared<MomentMollifier<R>>(TabulatedSum<R>(std::move(phi)), q);
}

} // namespace colombeau
