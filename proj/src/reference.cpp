#include "colombeau/reference.hpp"

#include <cmath>
#include <sstream>

namespace colombeau {

ReferenceDistribution& ReferenceDistribution::add(std::complex<double> c, RefAtom atom, int p,
                                                  double a) {
    terms.push_back(RefTerm{c, atom, p, a});
    return *this;
}

void ReferenceDistribution::canonicalize() {
    std::vector<RefTerm> merged;
    for (const auto& t : terms) {
        bool hit = false;
        for (auto& m : merged) {
            if (m.atom == t.atom && m.p == t.p && m.a == t.a) {
                m.coeff += t.coeff;
                hit = true;
                break;
            }
        }
        if (!hit)
            merged.push_back(t);
    }
    terms.clear();
    for (auto& m : merged)
        if (std::abs(m.coeff) > 0.0)
            terms.push_back(m);
}

std::string ref_atom_name(const RefTerm& t) {
    std::ostringstream os;
    switch (t.atom) {
    case RefAtom::delta:
        os << "delta";
        for (int i = 0; i < t.p; ++i)
            os << "'";
        break;
    case RefAtom::xplus_neg:
        os << "x_+^-" << t.p;
        break;
    case RefAtom::xminus_neg:
        os << "x_-^-" << t.p;
        break;
    case RefAtom::x_neg:
        os << "x^-" << t.p;
        break;
    case RefAtom::x_neg_sgn:
        os << "x^-" << t.p << " sgn x";
        break;
    case RefAtom::lnabs:
        os << "ln|x|";
        break;
    case RefAtom::lnplus:
        os << "ln x_+";
        break;
    case RefAtom::lnminus:
        os << "ln x_-";
        break;
    case RefAtom::theta:
        os << "theta";
        break;
    case RefAtom::theta_check:
        os << "theta(-x)";
        break;
    case RefAtom::xplus_pow:
        os << "x_+^" << t.a;
        break;
    case RefAtom::one:
        os << "1";
        break;
    }
    return os.str();
}

namespace {

std::string coeff_text(std::complex<double> c) {
    std::ostringstream os;
    if (c.imag() == 0.0) {
        os << c.real();
    } else if (c.real() == 0.0) {
        os << c.imag() << "i";
    } else {
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    }
    return os.str();
}

} // namespace

std::string ReferenceDistribution::to_string() const {
    if (terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (!first)
            os << " + ";
        first = false;
        if (t.coeff == std::complex<double>(1.0, 0.0))
            os << ref_atom_name(t);
        else
            os << coeff_text(t.coeff) << " " << ref_atom_name(t);
    }
    return os.str();
}

} // namespace colombeau
