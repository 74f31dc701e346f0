// Gauss-Legendre node/weight tables (positive half; rules are symmetric).
#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace colombeau {

template <class R>
struct Gauss4 {
    static constexpr std::array<R, 2> x = {
        R(0.3399810435848562648026658L), R(0.8611363115940525752239465L)};
    static constexpr std::array<R, 2> w = {
        R(0.6521451548625461426269361L), R(0.3478548451374538573730639L)};
};

template <class R>
struct Gauss8 {
    static constexpr std::array<R, 4> x = {
        R(0.1834346424956498049394761L), R(0.5255324099163289858177390L),
        R(0.7966664774136267395915539L), R(0.9602898564975362316835609L)};
    static constexpr std::array<R, 4> w = {
        R(0.3626837833783619829651504L), R(0.3137066458778872873379622L),
        R(0.2223810344533744705443560L), R(0.1012285362903762591525314L)};
};

template <class R>
struct Gauss16 {
    static constexpr std::array<R, 8> x = {
        R(0.0950125098376374401853193L), R(0.2816035507792589132304605L),
        R(0.4580167776572273863424194L), R(0.6178762444026437484466718L),
        R(0.7554044083550030338951012L), R(0.8656312023878317438804679L),
        R(0.9445750230732325760779884L), R(0.9894009349916499325961542L)};
    static constexpr std::array<R, 8> w = {
        R(0.1894506104550684962853967L), R(0.1826034150449235888667637L),
        R(0.1691565193950025381893121L), R(0.1495959888165767320815017L),
        R(0.1246289712555338720524763L), R(0.0951585116824927848099251L),
        R(0.0622535239386478928628438L), R(0.0271524594117540948517806L)};
};

// Applies a symmetric rule to f over [a,b]; accumulates |w f| into abs_sum.
template <class Rule, class R, class F>
auto gauss_apply(F&& f, R a, R b, R& abs_sum) {
    const R mid = (a + b) / 2;
    const R hl = (b - a) / 2;
    using V = decltype(f(mid));
    V acc{};
    R asum{};
    for (std::size_t i = 0; i < Rule::x.size(); ++i) {
        const R dx = hl * Rule::x[i];
        const V vl = f(mid - dx);
        const V vr = f(mid + dx);
        acc += Rule::w[i] * (vl + vr);
        asum += Rule::w[i] * (std::abs(vl) + std::abs(vr));
    }
    abs_sum += hl * asum;
    return hl * acc;
}

} // namespace colombeau
