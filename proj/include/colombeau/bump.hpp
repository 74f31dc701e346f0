// Smooth compactly supported bump kernels exp(-1/(1-t^2)) with closed-form
// derivatives.  The n-th derivative is P_n(t)/(1-t^2)^(2n) * exp(-1/(1-t^2))
// where P_n follows the integer recurrence
//   P_{n+1} = P_n' u^2 + 4 n t u P_n - 2 t P_n,   u = 1 - t^2.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace colombeau {

inline constexpr int bump_max_order = 8;

// Coefficient rows P_0..P_max (lowest degree first, exact integers).
const std::vector<std::vector<std::int64_t>>& bump_poly_table();

// n-th derivative of the unit bump at t.  Zero for |t| >= 1 and in the
// far tail where exp(-1/u) underflows past anything representable.
template <class R>
R bump_deriv(R t, int n) {
    const R u = R(1) - t * t;
    if (u * R(700) <= R(1))
        return R(0);
    const auto& row = bump_poly_table().at(static_cast<std::size_t>(n));
    R p{};
    for (auto it = row.rbegin(); it != row.rend(); ++it)
        p = p * t + R(*it);
    const R inv_u2 = R(1) / (u * u);
    R scale = R(1);
    for (int i = 0; i < n; ++i)
        scale *= inv_u2;
    return p * scale * std::exp(R(-1) / u);
}

template <class R>
struct BumpKernel {
    R center{};
    R halfwidth{1};
    R amplitude{1};
    int max_order = bump_max_order;

    R lo() const { return center - halfwidth; }
    R hi() const { return center + halfwidth; }

    // order-th derivative with respect to x
    R eval(R x, int order = 0) const {
        if (order > max_order)
            throw std::invalid_argument("BumpKernel: derivative order above max_order");
        const R t = (x - center) / halfwidth;
        return amplitude * bump_deriv(t, order) * std::pow(halfwidth, R(-order));
    }
};

template <class R>
BumpKernel<R> make_bump(R center, R halfwidth, R amplitude = R(1)) {
    if (!(halfwidth > R(0)))
        throw std::invalid_argument("make_bump: halfwidth must be positive");
    return BumpKernel<R>{center, halfwidth, amplitude};
}

// A finite sum of bump kernels (the f and g building blocks).
template <class R>
struct KernelSum {
    std::vector<BumpKernel<R>> parts;

    R eval(R x, int order = 0) const {
        R s{};
        for (const auto& k : parts)
            s += k.eval(x, order);
        return s;
    }
    R lo() const {
        R v = parts.empty() ? R(0) : parts.front().lo();
        for (const auto& k : parts)
            v = std::min(v, k.lo());
        return v;
    }
    R hi() const {
        R v = parts.empty() ? R(0) : parts.front().hi();
        for (const auto& k : parts)
            v = std::max(v, k.hi());
        return v;
    }
    void scale(R c) {
        for (auto& k : parts)
            k.amplitude *= c;
    }
};

} // namespace colombeau
