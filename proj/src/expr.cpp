#include "colombeau/expr.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace colombeau {

std::complex<double> CoeffLit::value() const {
    double v = static_cast<double>(num) / static_cast<double>(den);
    if (has_pi)
        v *= pi_v<double>;
    return has_i ? std::complex<double>(0.0, v) : std::complex<double>(v, 0.0);
}

std::string CoeffLit::text() const {
    std::ostringstream os;
    const bool symbolic = has_i || has_pi;
    bool wrote = false;
    if (num == -1 && den == 1 && symbolic) {
        os << "-";
    } else if (!(num == 1 && den == 1) || !symbolic) {
        os << num;
        if (den != 1)
            os << "/" << den;
        wrote = true;
    }
    if (has_i) {
        if (wrote)
            os << " ";
        os << "i";
        wrote = true;
    }
    if (has_pi) {
        if (wrote)
            os << " ";
        os << "pi";
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;

    explicit Lexer(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    // next token is a word (letters then alphanumerics)?
    std::string peek_word() {
        skip_ws();
        std::size_t p = pos;
        if (p >= src.size() || !std::isalpha(static_cast<unsigned char>(src[p])))
            return {};
        std::string w;
        while (p < src.size() && std::isalnum(static_cast<unsigned char>(src[p])))
            w.push_back(src[p++]);
        return w;
    }
    void consume_word(const std::string& w) {
        skip_ws();
        pos += w.size();
    }
    bool at_digit() {
        skip_ws();
        return pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]));
    }
    long long read_int() {
        skip_ws();
        std::size_t start = pos;
        long long v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            v = v * 10 + (src[pos] - '0');
            ++pos;
        }
        if (pos == start)
            throw ParseError("expected integer", pos);
        return v;
    }
    double read_real_allow_sign() {
        skip_ws();
        std::size_t start = pos;
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+'))
            ++pos;
        bool any = false;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            ++pos;
            any = true;
        }
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                ++pos;
                any = true;
            }
        }
        if (!any)
            throw ParseError("malformed exponent", start);
        return std::stod(src.substr(start, pos - start));
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& s) : lex(s) {}

    AstPtr run() {
        AstPtr ast = parse_sum();
        if (!lex.eof())
            throw ParseError("unexpected trailing input", lex.pos);
        return ast;
    }

    AstPtr parse_sum() {
        std::vector<AstPtr> terms;
        bool lead_minus = lex.accept('-');
        AstPtr first = parse_prod();
        terms.push_back(lead_minus ? negate(first) : first);
        while (true) {
            if (lex.accept('+')) {
                terms.push_back(parse_prod());
            } else if (lex.accept('-')) {
                terms.push_back(negate(parse_prod()));
            } else {
                break;
            }
        }
        if (terms.size() == 1)
            return terms.front();
        auto node = std::make_shared<ExprAst>();
        node->node = ExprAst::Node::sum;
        node->children = std::move(terms);
        return node;
    }

    AstPtr parse_prod() {
        std::vector<AstPtr> factors;
        factors.push_back(parse_factor());
        while (lex.peek() == '*' || lex.peek() == '.') {
            lex.accept(lex.peek());
            factors.push_back(parse_factor());
        }
        if (factors.size() == 1)
            return factors.front();
        auto node = std::make_shared<ExprAst>();
        node->node = ExprAst::Node::product;
        node->children = std::move(factors);
        return node;
    }

    AstPtr parse_factor() {
        CoeffLit c;
        const bool coeff = parse_coeff(c);
        if (coeff && (lex.peek() == '*' || lex.peek() == '.'))
            lex.accept(lex.peek());
        AstPtr primary = parse_primary();
        if (!coeff)
            return primary;
        auto node = std::make_shared<ExprAst>();
        node->node = ExprAst::Node::scale;
        node->coeff = c;
        node->children = {primary};
        return node;
    }

    bool parse_coeff(CoeffLit& c) {
        bool any = false, numeric = false;
        while (true) {
            if (lex.at_digit() && !numeric) {
                c.num = lex.read_int();
                if (lex.accept('/')) {
                    c.den = lex.read_int();
                    if (c.den == 0)
                        throw ParseError("zero denominator", lex.pos);
                }
                numeric = any = true;
                continue;
            }
            const std::string w = lex.peek_word();
            if (w == "i" && !c.has_i) {
                lex.consume_word(w);
                c.has_i = any = true;
                continue;
            }
            if (w == "pi" && !c.has_pi) {
                lex.consume_word(w);
                c.has_pi = any = true;
                continue;
            }
            break;
        }
        return any;
    }

    AstPtr parse_primary() {
        if (lex.accept('(')) {
            AstPtr inner = parse_sum();
            if (!lex.accept(')'))
                throw ParseError("unbalanced parenthesis", lex.pos);
            return inner;
        }
        return parse_atom();
    }

    AstPtr parse_atom() {
        lex.skip_ws();
        const std::size_t at = lex.pos;
        const std::string w = lex.peek_word();
        if (w.empty())
            throw ParseError("expected atom", lex.pos);

        AtomSpec a;
        bool needs_exp = false, neg_only = false;
        if (w == "D") {
            a.kind = AtomKind::D;
        } else if (w == "H") {
            a.kind = AtomKind::H;
        } else if (w == "Hc") {
            a.kind = AtomKind::Hc;
        } else if (w == "Xp") {
            a.kind = AtomKind::Xp;
            needs_exp = true;
        } else if (w == "Xm") {
            a.kind = AtomKind::Xm;
            needs_exp = true;
        } else if (w == "X") {
            a.kind = AtomKind::X;
            needs_exp = neg_only = true;
        } else if (w == "Xsgn") {
            a.kind = AtomKind::Xsgn;
            needs_exp = neg_only = true;
        } else if (w == "Xi0p") {
            a.kind = AtomKind::Xi0p;
            needs_exp = neg_only = true;
        } else if (w == "Xi0m") {
            a.kind = AtomKind::Xi0m;
            needs_exp = neg_only = true;
        } else if (w == "LnP") {
            a.kind = AtomKind::LnP;
        } else if (w == "LnM") {
            a.kind = AtomKind::LnM;
        } else if (w == "LnAbs") {
            a.kind = AtomKind::LnAbs;
        } else if (w == "LnSgn") {
            a.kind = AtomKind::LnSgn;
        } else {
            throw ParseError("unknown atom '" + w + "'", at);
        }
        lex.consume_word(w);

        if (a.kind == AtomKind::D) {
            while (lex.pos < lex.src.size() && lex.src[lex.pos] == '\'') {
                ++a.deriv;
                ++lex.pos;
            }
            if (a.deriv > 4)
                throw ParseError("derivative order above 4 on D", lex.pos);
        }

        if (lex.peek() == '^') {
            lex.accept('^');
            const std::size_t ep = lex.pos;
            a.exponent = lex.read_real_allow_sign();
            a.has_exponent = true;
            const bool neg_int = a.exponent < 0 && std::floor(a.exponent) == a.exponent;
            if (!needs_exp)
                throw ParseError("atom does not take an exponent", ep);
            if (neg_only && !neg_int)
                throw ParseError("atom requires a negative integer exponent", ep);
            if (!neg_only && !neg_int && !(a.exponent > -1.0))
                throw ParseError("exponent must be > -1 or a negative integer", ep);
        } else if (needs_exp) {
            throw ParseError("atom requires an exponent", lex.pos);
        }

        auto node = std::make_shared<ExprAst>();
        node->node = ExprAst::Node::atom;
        node->atom = a;
        return node;
    }

    static AstPtr negate(const AstPtr& p) {
        if (p->node == ExprAst::Node::scale) {
            auto node = std::make_shared<ExprAst>(*p);
            node->coeff.negate();
            return node;
        }
        auto node = std::make_shared<ExprAst>();
        node->node = ExprAst::Node::scale;
        node->coeff = CoeffLit{-1, 1, false, false};
        node->children = {p};
        return node;
    }
};

std::string atom_text(const AtomSpec& a) {
    std::string s;
    switch (a.kind) {
    case AtomKind::D:
        s = "D" + std::string(static_cast<std::size_t>(a.deriv), '\'');
        return s;
    case AtomKind::H:
        return "H";
    case AtomKind::Hc:
        return "Hc";
    case AtomKind::Xp:
        s = "Xp";
        break;
    case AtomKind::Xm:
        s = "Xm";
        break;
    case AtomKind::X:
        s = "X";
        break;
    case AtomKind::Xsgn:
        s = "Xsgn";
        break;
    case AtomKind::Xi0p:
        s = "Xi0p";
        break;
    case AtomKind::Xi0m:
        s = "Xi0m";
        break;
    case AtomKind::LnP:
        return "LnP";
    case AtomKind::LnM:
        return "LnM";
    case AtomKind::LnAbs:
        return "LnAbs";
    case AtomKind::LnSgn:
        return "LnSgn";
    }
    std::ostringstream os;
    os << s << "^";
    if (std::floor(a.exponent) == a.exponent)
        os << static_cast<long long>(a.exponent);
    else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", a.exponent);
        os << buf;
    }
    return os.str();
}

std::string print_node(const ExprAst& ast, bool parenthesize_sums);

std::string print_scale_body(const ExprAst& scale) {
    // a coefficient binds to one atom or one parenthesized group; anything
    // else would reattach to the first factor when reparsed
    const auto& child = *scale.children[0];
    std::string body = child.node == ExprAst::Node::atom
                           ? print_node(child, false)
                           : "(" + print_node(child, false) + ")";
    const std::string c = scale.coeff.text();
    return c.empty() ? body : c + " " + body;
}

std::string print_node(const ExprAst& ast, bool parenthesize_sums) {
    switch (ast.node) {
    case ExprAst::Node::atom:
        return atom_text(ast.atom);
    case ExprAst::Node::scale: {
        CoeffLit c = ast.coeff;
        if (c.num < 0) {
            ExprAst flipped = ast;
            flipped.coeff.negate();
            return "-" + print_scale_body(flipped);
        }
        return print_scale_body(ast);
    }
    case ExprAst::Node::product: {
        std::string out;
        for (std::size_t i = 0; i < ast.children.size(); ++i) {
            if (i)
                out += " * ";
            out += print_node(*ast.children[i], true);
        }
        return out;
    }
    case ExprAst::Node::sum: {
        std::string out;
        for (std::size_t i = 0; i < ast.children.size(); ++i) {
            const auto& ch = *ast.children[i];
            if (i == 0) {
                out += print_node(ch, false);
            } else if (ch.node == ExprAst::Node::scale && ch.coeff.num < 0) {
                ExprAst flipped = ch;
                flipped.coeff.negate();
                const bool unit = flipped.coeff == CoeffLit{1, 1, false, false};
                out += " - " + (unit ? print_node(*flipped.children[0], true)
                                     : print_node(flipped, false));
            } else {
                out += " + " + print_node(ch, false);
            }
        }
        return parenthesize_sums ? "(" + out + ")" : out;
    }
    }
    return {};
}

} // namespace

AstPtr parse(const std::string& src) {
    Parser p(src);
    return p.run();
}

std::string print_ast(const ExprAst& ast) { return print_node(ast, false); }

bool ast_equal(const ExprAst& a, const ExprAst& b) {
    if (a.node != b.node)
        return false;
    switch (a.node) {
    case ExprAst::Node::atom:
        return a.atom == b.atom;
    case ExprAst::Node::scale:
        if (!(a.coeff == b.coeff))
            return false;
        break;
    default:
        break;
    }
    if (a.children.size() != b.children.size())
        return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!ast_equal(*a.children[i], *b.children[i]))
            return false;
    return true;
}

namespace {

void accumulate_reference(const ExprAst& ast, std::complex<double> mult,
                          ReferenceDistribution& out) {
    switch (ast.node) {
    case ExprAst::Node::sum:
        for (const auto& ch : ast.children)
            accumulate_reference(*ch, mult, out);
        return;
    case ExprAst::Node::scale:
        accumulate_reference(*ast.children[0], mult * ast.coeff.value(), out);
        return;
    case ExprAst::Node::product:
        if (ast.children.size() != 1)
            throw std::invalid_argument(
                "compile_reference: products of distributions have no reference meaning");
        accumulate_reference(*ast.children[0], mult, out);
        return;
    case ExprAst::Node::atom:
        break;
    }
    const auto& a = ast.atom;
    const int n = a.has_exponent ? static_cast<int>(-a.exponent) : 0;
    switch (a.kind) {
    case AtomKind::D:
        out.add(mult, RefAtom::delta, a.deriv);
        return;
    case AtomKind::H:
        out.add(mult, RefAtom::theta);
        return;
    case AtomKind::Hc:
        out.add(mult, RefAtom::theta_check);
        return;
    case AtomKind::LnP:
        out.add(mult, RefAtom::lnplus);
        return;
    case AtomKind::LnM:
        out.add(mult, RefAtom::lnminus);
        return;
    case AtomKind::LnAbs:
        out.add(mult, RefAtom::lnabs);
        return;
    case AtomKind::LnSgn:
        out.add(mult, RefAtom::lnplus).add(-mult, RefAtom::lnminus);
        return;
    case AtomKind::Xp:
        if (n >= 1)
            out.add(mult, RefAtom::xplus_neg, n);
        else
            out.add(mult, RefAtom::xplus_pow, 0, a.exponent);
        return;
    case AtomKind::Xm:
        if (n >= 1)
            out.add(mult, RefAtom::xminus_neg, n);
        else
            throw std::invalid_argument("compile_reference: x_-^a has no catalog atom");
        return;
    case AtomKind::X:
        out.add(mult, RefAtom::x_neg, n);
        return;
    case AtomKind::Xsgn:
        out.add(mult, RefAtom::x_neg_sgn, n);
        return;
    case AtomKind::Xi0p:
    case AtomKind::Xi0m: {
        out.add(mult, RefAtom::x_neg, n);
        double fact = 1;
        for (int k = 2; k <= n - 1; ++k)
            fact *= k;
        const double mag = pi_v<double> / fact * ((n - 1) % 2 ? -1.0 : 1.0);
        const std::complex<double> c =
            a.kind == AtomKind::Xi0p ? std::complex<double>(0, -mag) : std::complex<double>(0, mag);
        out.add(mult * c, RefAtom::delta, n - 1);
        return;
    }
    }
}

} // namespace

ReferenceDistribution compile_reference(const ExprAst& ast) {
    ReferenceDistribution out;
    accumulate_reference(ast, {1.0, 0.0}, out);
    out.canonicalize();
    return out;
}

} // namespace colombeau
