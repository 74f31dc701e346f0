// Basic numeric helpers shared across the library.
#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace colombeau {

template <class R>
using cplx = std::complex<R>;

template <class R>
inline constexpr R pi_v = R(3.14159265358979323846264338327950288L);

// Neumaier compensated accumulator; keeps panel sums reproducible and tight.
template <class T>
struct Accum {
    T sum{};
    T comp{};

    void add(T x) {
        T t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    T total() const { return sum + comp; }
};

template <class R>
struct AccumC {
    Accum<R> re, im;
    void add(cplx<R> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx<R> total() const { return {re.total(), im.total()}; }
};

template <class R>
inline bool finite(cplx<R> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace colombeau
