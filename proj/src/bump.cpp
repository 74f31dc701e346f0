#include "colombeau/bump.hpp"

namespace colombeau {

namespace {

using Poly = std::vector<std::int64_t>;

Poly mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

Poly add(Poly a, const Poly& b) {
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    return a;
}

Poly diff(const Poly& a) {
    if (a.size() <= 1)
        return {0};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = static_cast<std::int64_t>(i) * a[i];
    return r;
}

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0)
        p.pop_back();
}

std::vector<Poly> build_table() {
    const Poly u = {1, 0, -1};
    const Poly u2 = mul(u, u);
    std::vector<Poly> table;
    table.push_back({1});
    for (int n = 0; n < bump_max_order; ++n) {
        const Poly& pn = table.back();
        Poly next = mul(diff(pn), u2);
        next = add(next, mul(Poly{0, 4 * n}, mul(u, pn)));
        next = add(next, mul(Poly{0, -2}, pn));
        trim(next);
        table.push_back(next);
    }
    return table;
}

} // namespace

const std::vector<std::vector<std::int64_t>>& bump_poly_table() {
    static const std::vector<Poly> table = build_table();
    return table;
}

} // namespace colombeau
