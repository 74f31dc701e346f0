// Test-only oracles, independent of the library's evaluation paths:
// iterated Richardson central differences, an equispaced trapezoid rule, and
// a tiny deterministic LCG for property sampling.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracles {

// first derivative, two-level Richardson central difference (O(h^6))
inline double fd1(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2 * hh); };
    const double r1 = (4 * d(h / 2) - d(h)) / 3;
    const double r2 = (4 * d(h / 4) - d(h / 2)) / 3;
    return (16 * r2 - r1) / 15;
}

// order-n derivative by iterating fd1; independent of any closed form
inline double fd_derivative(std::function<double(double)> f, double x, int order,
                            double h = 0.05) {
    if (order <= 0)
        return f(x);
    std::function<double(double)> g = [f, order, h](double y) {
        return fd_derivative(f, y, order - 1, h);
    };
    return fd1(g, x, h);
}

// fixed-grid trapezoid; spectrally accurate for smooth compactly supported
// integrands, used as the independent quadrature cross-check
inline double trapezoid(const std::function<double(double)>& f, double a, double b,
                        int n = 20000) {
    const double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i)
        s += f(a + h * i);
    return s * h;
}

struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed = 0x853c49e6748fea9bULL) : state(seed) {}
    double uniform() { // in [0,1)
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }
};

} // namespace oracles
