#include "slicealg/format.hpp"

#include <cctype>

namespace slicealg {

namespace {

template <class S>
std::string format_impl(const Element<S>& x) {
    const auto& names = x.algebra().basis_names();
    std::string out;
    for (int i = 0; i < x.dim(); ++i) {
        // Float coefficients within the tolerance print as zero.
        if (ScalarTraits<S>::is_zero(x[i])) continue;
        std::string term;
        const bool neg = ScalarTraits<S>::sign(x[i]) < 0 || (!ScalarTraits<S>::exact && x[i] < 0);
        const S mag = neg ? S(-x[i]) : x[i];
        if (i == 0) {
            term = ScalarTraits<S>::str(mag);
        } else if (mag == S(1)) {
            term = names[i];
        } else {
            term = ScalarTraits<S>::str(mag) + "*" + names[i];
        }
        if (neg) out += "-";
        else if (!out.empty()) out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

class Lexer {
public:
    Lexer(const std::string& s) : s_(s) {}
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip();
        return pos_ >= s_.size();
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    std::size_t pos() const { return pos_; }
    void advance() { ++pos_; }
    std::string number(bool allow_decimal) {
        skip();
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::size_t d = pos_;
            digits();
            if (d == pos_) throw ParseError("expected denominator", pos_);
        } else if (pos_ < s_.size() && s_[pos_] == '.') {
            if (!allow_decimal) throw ParseError("decimal literal not allowed in exact mode", pos_);
            ++pos_;
            digits();
            // An exponent is only recognized after a decimal point, so that
            // "2e1" keeps meaning 2*e1 in Clifford algebras.
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                std::size_t p = pos_ + 1;
                if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
                if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                    pos_ = p;
                    digits();
                }
            }
        }
        return s_.substr(start, pos_ - start);
    }
    std::string ident() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return s_.substr(start, pos_ - start);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

int resolve_name(const AlgebraSpec& a, const std::string& name, std::size_t pos) {
    int idx = a.basis_index(name);
    if (idx < 0 && name == "I") idx = a.basis_index("I1");
    if (idx < 0) throw ParseError("unknown basis name '" + name + "' for algebra " + a.name(), pos);
    return idx;
}

}  // namespace

std::string format_element(const QElement& x) { return format_impl(x); }
std::string format_element(const FElement& x) { return format_impl(x); }

QElement parse_element(const std::string& literal, const AlgebraPtr& spec, bool allow_decimal) {
    Lexer lx(literal);
    QElement out = QElement::zero(spec);
    if (lx.done()) throw ParseError("empty element literal", 0);
    bool first = true;
    while (!lx.done()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            lx.advance();
        } else if (!first) {
            throw ParseError(std::string("expected '+' or '-' but found '") + c + "'", lx.pos());
        }
        first = false;
        Rational coeff = 1;
        bool have_coeff = false;
        c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t p = lx.pos();
            std::string num = lx.number(allow_decimal);
            if (num.empty()) throw ParseError("expected a number", p);
            coeff = parse_rational(num, allow_decimal);
            have_coeff = true;
        }
        int index = 0;
        bool star = false;
        if (lx.peek() == '*') {
            lx.advance();
            star = true;
        }
        c = lx.peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t p = lx.pos();
            index = resolve_name(*spec, lx.ident(), p);
        } else if (star && c == '1') {
            // "2*1" spells out the unit basis element.
            std::size_t p = lx.pos();
            if (lx.number(false) != "1") throw ParseError("expected a basis name", p);
        } else if (star || !have_coeff) {
            throw ParseError("expected a basis name", lx.pos());
        }
        out[index] += sign * coeff;
    }
    return out;
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& s, const AlgebraPtr& a, bool dec) : lx_(s), a_(a), dec_(dec) {}

    PolyStem parse() {
        if (lx_.done()) throw ParseError("empty polynomial", 0);
        PolyStem p = expr();
        if (!lx_.done()) throw ParseError(std::string("unexpected '") + lx_.peek() + "'", lx_.pos());
        return p;
    }

private:
    PolyStem constant(const Rational& q) { return poly_constant(q * QElement::one(a_)); }

    PolyStem expr() {
        int sign = 1;
        if (lx_.peek() == '+' || lx_.peek() == '-') {
            sign = lx_.peek() == '-' ? -1 : 1;
            lx_.advance();
        }
        PolyStem acc = term();
        if (sign < 0) acc = poly_product(constant(-1), acc);
        while (lx_.peek() == '+' || lx_.peek() == '-') {
            const bool minus = lx_.peek() == '-';
            lx_.advance();
            PolyStem t = term();
            acc = minus ? poly_sub(acc, t) : poly_add(acc, t);
        }
        return acc;
    }

    bool starts_factor(char c) const {
        return c == '(' || c == '.' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    PolyStem term() {
        PolyStem acc = factor();
        for (;;) {
            char c = lx_.peek();
            if (c == '*') {
                lx_.advance();
                acc = poly_product(acc, factor());
            } else if (starts_factor(c)) {
                acc = poly_product(acc, factor());
            } else {
                return acc;
            }
        }
    }

    PolyStem factor() {
        const char c = lx_.peek();
        const std::size_t p = lx_.pos();
        if (c == '(') {
            lx_.advance();
            PolyStem inner = expr();
            if (lx_.peek() != ')') throw ParseError("expected ')'", lx_.pos());
            lx_.advance();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::string num = lx_.number(dec_);
            if (num.empty()) throw ParseError("expected a number", p);
            return constant(parse_rational(num, dec_));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::string name = lx_.ident();
            if (name == "x") {
                int power = 1;
                if (lx_.peek() == '^') {
                    lx_.advance();
                    const std::size_t q = lx_.pos();
                    const std::string digits = lx_.number(false);
                    if (digits.empty() || digits.find('/') != std::string::npos)
                        throw ParseError("expected a nonnegative integer exponent", q);
                    power = std::stoi(digits);
                }
                PolyStem out = constant(1);
                const PolyStem x = poly_x(a_);
                for (int i = 0; i < power; ++i) out = poly_product(out, x);
                return out;
            }
            return poly_constant(QElement::basis(a_, resolve_name(*a_, name, p)));
        }
        if (c == '\0') throw ParseError("unexpected end of expression", p);
        throw ParseError(std::string("unexpected '") + c + "'", p);
    }

    Lexer lx_;
    AlgebraPtr a_;
    bool dec_;
};

}  // namespace

PolyStem parse_poly(const std::string& expr, const AlgebraPtr& spec, bool allow_decimal) {
    return PolyParser(expr, spec, allow_decimal).parse();
}

}  // namespace slicealg
