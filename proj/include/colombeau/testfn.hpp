// Test functions psi = (polynomial of degree <= 4) * bump(0, radius), with
// exact derivatives up to order 5 from the Leibniz rule on the two factors.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "colombeau/bump.hpp"

namespace colombeau {

template <class R>
class TestFunction {
public:
    static constexpr int max_deriv = 5;

    TestFunction(std::array<R, 5> poly, R radius, std::string name = "psi")
        : poly_(poly), radius_(radius), name_(std::move(name)) {
        if (!(radius >= R(1)))
            throw std::invalid_argument("TestFunction: support radius must be >= 1");
    }

    R operator()(R x) const { return deriv(x, 0); }

    // exact m-th derivative (Leibniz on poly * bump)
    R deriv(R x, int m) const {
        if (m < 0 || m > max_deriv)
            throw std::invalid_argument("TestFunction: derivative order out of range");
        static constexpr int binom[6][6] = {
            {1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
            {1, 3, 3, 1, 0, 0},  {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
        R acc{};
        for (int j = 0; j <= m && j <= 4; ++j) {
            const R pj = poly_deriv(x, j);
            if (pj == R(0))
                continue;
            const R bk = bump_deriv(x / radius_, m - j) * std::pow(radius_, R(-(m - j)));
            acc += R(binom[m][j]) * pj * bk;
        }
        return acc;
    }

    // (psi(0), psi'(0), ..., psi''''(0)) exactly
    std::array<R, 5> derivs_at_zero() const {
        std::array<R, 5> out{};
        for (int m = 0; m < 5; ++m)
            out[static_cast<std::size_t>(m)] = deriv(R(0), m);
        return out;
    }

    TestFunction mirrored() const {
        std::array<R, 5> p = poly_;
        p[1] = -p[1];
        p[3] = -p[3];
        return TestFunction(p, radius_, name_ + "(-x)");
    }

    R support_radius() const { return radius_; }
    const std::array<R, 5>& poly() const { return poly_; }
    const std::string& name() const { return name_; }

private:
    R poly_deriv(R x, int j) const {
        // j-th derivative of c0 + c1 x + ... + c4 x^4, Horner over k >= j
        R acc{};
        for (int k = 4; k >= j; --k) {
            R ff = R(1); // falling factorial k (k-1) ... (k-j+1)
            for (int i = 0; i < j; ++i)
                ff *= R(k - i);
            acc = acc * x + poly_[static_cast<std::size_t>(k)] * ff;
        }
        return acc;
    }

    std::array<R, 5> poly_;
    R radius_;
    std::string name_;
};

// The three catalog excitations: psiA even, psiB with all derivative orders,
// psiC with psi(0) and psi'(0) both nonzero.
template <class R>
TestFunction<R> psi_catalog(char which) {
    switch (which) {
    case 'A':
        return TestFunction<R>({R(1), R(0), R(0), R(0), R(0)}, R(4), "psiA");
    case 'B':
        return TestFunction<R>({R(1), R(1), R(1), R(1), R(0)}, R(4), "psiB");
    case 'C':
        return TestFunction<R>({R(2), R(-1), R(0.5), R(1), R(0)}, R(4), "psiC");
    default:
        throw std::invalid_argument("psi_catalog: unknown test function");
    }
}

} // namespace colombeau
