// Text DSL for distributional product expressions.
//
//   Sum    := ['-'] Prod (('+'|'-') Prod)*
//   Prod   := Factor (('*'|'.') Factor)*
//   Factor := [Coeff ['*'|'.']] (Atom | '(' Sum ')')
//   Coeff  := (INT ['/' INT] | 'i' | 'pi')+        (each component at most once)
//   Atom   := D primes* | H | Hc | Xp^a | Xm^a | X^-p | Xsgn^-p
//           | LnP | LnM | LnAbs | LnSgn | Xi0p^-p | Xi0m^-p
//
// Primes on D denote derivative order (max 4).  Exponents are integers or
// decimal reals; coefficients stay exact (integers, fractions, i, pi).
#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "colombeau/reference.hpp"
#include "colombeau/representative.hpp"

namespace colombeau {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

// exact scalar literal: (num/den) * i^has_i * pi^has_pi
struct CoeffLit {
    long long num = 1;
    long long den = 1;
    bool has_i = false;
    bool has_pi = false;

    std::complex<double> value() const;
    std::string text() const;
    void negate() { num = -num; }
    bool operator==(const CoeffLit&) const = default;
};

enum class AtomKind { D, H, Hc, Xp, Xm, X, Xsgn, LnP, LnM, LnAbs, LnSgn, Xi0p, Xi0m };

struct AtomSpec {
    AtomKind kind = AtomKind::D;
    int deriv = 0;         // D only
    bool has_exponent = false;
    double exponent = 0;   // Xp/Xm/X/Xsgn/Xi0p/Xi0m
    bool operator==(const AtomSpec&) const = default;
};

struct ExprAst;
using AstPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
    enum class Node { atom, scale, product, sum };
    Node node = Node::atom;
    AtomSpec atom;                // node == atom
    CoeffLit coeff;               // node == scale
    std::vector<AstPtr> children; // scale: 1, product: >= 1, sum: >= 2
};

AstPtr parse(const std::string& src);
std::string print_ast(const ExprAst& ast);
inline std::string print_ast(const AstPtr& p) { return print_ast(*p); }
bool ast_equal(const ExprAst& a, const ExprAst& b);

// compile to a reference-distribution target (linear combinations only)
ReferenceDistribution compile_reference(const ExprAst& ast);

namespace detail {

template <class R>
Representative<R> compile_atom(const AtomSpec& a, std::shared_ptr<const KernelFamily<R>> fam) {
    auto neg_power = [&](double e) { return e < 0 && std::floor(e) == e; };
    switch (a.kind) {
    case AtomKind::D:
        return rep_delta(fam, a.deriv);
    case AtomKind::H:
        return rep_heaviside(fam, false);
    case AtomKind::Hc:
        return rep_heaviside(fam, true);
    case AtomKind::Xp:
    case AtomKind::Xm: {
        const int sign = a.kind == AtomKind::Xp ? +1 : -1;
        if (neg_power(a.exponent))
            return rep_x_neg_int(fam, sign, static_cast<int>(-a.exponent) - 1);
        return rep_x_power(fam, sign, R(a.exponent));
    }
    case AtomKind::X:
        return rep_derived(fam, Derived::x_neg, static_cast<int>(-a.exponent));
    case AtomKind::Xsgn:
        return rep_derived(fam, Derived::x_neg_sgn, static_cast<int>(-a.exponent));
    case AtomKind::Xi0p:
        return rep_derived(fam, Derived::x_i0_plus, static_cast<int>(-a.exponent));
    case AtomKind::Xi0m:
        return rep_derived(fam, Derived::x_i0_minus, static_cast<int>(-a.exponent));
    case AtomKind::LnP:
        return rep_ln(fam, +1);
    case AtomKind::LnM:
        return rep_ln(fam, -1);
    case AtomKind::LnAbs:
        return rep_derived(fam, Derived::ln_abs);
    case AtomKind::LnSgn:
        return rep_derived(fam, Derived::ln_sgn);
    }
    throw std::invalid_argument("compile: unknown atom");
}

} // namespace detail

template <class R>
Representative<R> compile(const ExprAst& ast, std::shared_ptr<const KernelFamily<R>> fam) {
    switch (ast.node) {
    case ExprAst::Node::atom:
        return detail::compile_atom(ast.atom, fam);
    case ExprAst::Node::scale: {
        const auto c = ast.coeff.value();
        return linear_combination<R>(
            {{cplx<R>(R(c.real()), R(c.imag())), compile(*ast.children[0], fam)}});
    }
    case ExprAst::Node::product: {
        std::vector<Representative<R>> parts;
        parts.reserve(ast.children.size());
        for (const auto& ch : ast.children)
            parts.push_back(compile(*ch, fam));
        // cheap factors first so zero regions short-circuit the product
        std::stable_sort(parts.begin(), parts.end(), [](const auto& l, const auto& r) {
            return static_cast<int>(l.cost) < static_cast<int>(r.cost);
        });
        return product(std::move(parts));
    }
    case ExprAst::Node::sum: {
        std::vector<std::pair<cplx<R>, Representative<R>>> terms;
        terms.reserve(ast.children.size());
        for (const auto& ch : ast.children)
            terms.emplace_back(cplx<R>(1, 0), compile(*ch, fam));
        return linear_combination(std::move(terms));
    }
    }
    throw std::invalid_argument("compile: malformed AST");
}

template <class R>
Representative<R> compile(const std::string& src, std::shared_ptr<const KernelFamily<R>> fam) {
    return compile(*parse(src), fam);
}

} // namespace colombeau
