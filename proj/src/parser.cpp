#include "smq/parser.hpp"

#include <cctype>
#include <sstream>

namespace smq {

VariableNames VariableNames::standard(int m, int n, bool central) {
    VariableNames v;
    if (m % 2 == 0) {
        for (int j = 1; j <= m / 2; ++j) v.even.push_back("x" + std::to_string(j));
        for (int j = 1; j <= m / 2; ++j) v.even.push_back("w" + std::to_string(j));
    } else {
        for (int j = 1; j <= m; ++j) v.even.push_back("x" + std::to_string(j));
    }
    if (central) v.even.push_back("a");
    for (int i = 1; i <= n; ++i) v.odd.push_back("th" + std::to_string(i));
    return v;
}

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { number, name, plus, minus, star, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Rational value;
    bool imaginary = false;
    int line = 1;
    int column = 1;
};

class Lexer {
   public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            std::string num;
            while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) num += take();
            if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                num += take();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) num += take();
            }
            try {
                t.value = parse_rational(num);
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + num + "'", t.line, t.column);
            }
            if (pos_ < src_.size() && src_[pos_] == 'i' && !ident_char(pos_ + 1)) {
                take();
                t.imaginary = true;
            }
            t.kind = Tok::number;
            t.text = num;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() && ident_char(pos_)) t.text += take();
            t.kind = Tok::name;
            return t;
        }
        take();
        t.text = std::string(1, c);
        switch (c) {
            case '+': t.kind = Tok::plus; break;
            case '-': t.kind = Tok::minus; break;
            case '*': t.kind = Tok::star; break;
            case '^': t.kind = Tok::caret; break;
            case '(': t.kind = Tok::lparen; break;
            case ')': t.kind = Tok::rparen; break;
            case ',': t.kind = Tok::comma; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
        return t;
    }

   private:
    bool ident_char(std::size_t p) const {
        if (p >= src_.size()) return false;
        const auto ch = static_cast<unsigned char>(src_[p]);
        return std::isalnum(ch) || ch == '_';
    }
    char take() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

template <class C>
class Parser {
   public:
    using F = Superfunction<C>;

    Parser(const std::string& src, const VariableNames& names) : lex_(src), names_(names) { advance(); }

    F parse() {
        F r = expr();
        if (cur_.kind != Tok::end) fail("unexpected '" + cur_.text + "'");
        return r;
    }

   private:
    int m() const { return static_cast<int>(names_.even.size()); }
    int n() const { return static_cast<int>(names_.odd.size()); }

    void advance() { cur_ = lex_.next(); }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, cur_.line, cur_.column); }
    void expect(Tok k, const char* what) {
        if (cur_.kind != k) fail(std::string("expected ") + what);
        advance();
    }

    F add(const F& a, const F& b, bool subtract) {
        try {
            return subtract ? a - b : a + b;
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    F expr() {
        F r = term();
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            const bool sub = cur_.kind == Tok::minus;
            advance();
            r = add(r, term(), sub);
        }
        return r;
    }
    F term() {
        F r = unary();
        while (cur_.kind == Tok::star) {
            advance();
            r = pointwise_mul(r, unary());
        }
        return r;
    }
    F unary() {
        if (cur_.kind == Tok::minus) {
            advance();
            return -unary();
        }
        if (cur_.kind == Tok::plus) {
            advance();
            return unary();
        }
        return power();
    }
    F power() {
        F base = atom();
        if (cur_.kind != Tok::caret) return base;
        advance();
        if (cur_.kind != Tok::number || cur_.imaginary || cur_.value.get_den() != 1 || sgn(cur_.value) < 0)
            fail("exponent must be a non-negative integer");
        if (cur_.value > 64) fail("exponent too large");
        const long e = cur_.value.get_num().get_si();
        advance();
        F r = F::one(m(), n());
        for (long k = 0; k < e; ++k) r = pointwise_mul(r, base);
        return r;
    }
    F atom() {
        switch (cur_.kind) {
            case Tok::number: {
                const QComplex c = cur_.imaginary ? QComplex(Rational(0), cur_.value) : QComplex(cur_.value);
                advance();
                return F::constant(m(), n(), c);
            }
            case Tok::lparen: {
                advance();
                F r = expr();
                expect(Tok::rparen, "')'");
                return r;
            }
            case Tok::name: return name();
            default: fail(cur_.kind == Tok::end ? "unexpected end of input" : "unexpected '" + cur_.text + "'");
        }
    }
    F name() {
        const std::string id = cur_.text;
        if (id == "i") {
            advance();
            return F::constant(m(), n(), QComplex::i());
        }
        if (id == "gauss") return gauss();
        for (int k = 0; k < m(); ++k)
            if (names_.even[static_cast<std::size_t>(k)] == id) {
                advance();
                return F::even_coordinate(m(), n(), k);
            }
        for (int k = 0; k < n(); ++k)
            if (names_.odd[static_cast<std::size_t>(k)] == id) {
                advance();
                return F::odd_coordinate(m(), n(), k);
            }
        fail("undeclared variable '" + id + "'");
    }
    F gauss() {
        if constexpr (std::is_same_v<C, GaussPoly<QComplex>>) {
            advance();
            expect(Tok::lparen, "'(' after gauss");
            std::vector<Rational> widths;
            while (true) {
                if (cur_.kind != Tok::number || cur_.imaginary) fail("gauss widths must be real numbers");
                widths.push_back(cur_.value);
                advance();
                if (cur_.kind == Tok::comma) {
                    advance();
                    continue;
                }
                break;
            }
            expect(Tok::rparen, "')'");
            if (static_cast<int>(widths.size()) != m()) fail("gauss needs one width per even variable");
            return F::blade(m(), n(), 0, GaussPoly<QComplex>::gaussian(widths));
        } else {
            fail("gauss() requires the gausspoly backend");
        }
    }

    Lexer lex_;
    const VariableNames& names_;
    Token cur_;
};

std::string monomial(const Exponents& e, Mask bits, const VariableNames& names) {
    std::string out;
    auto append = [&](const std::string& s) {
        if (!out.empty()) out += "*";
        out += s;
    };
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        append(e[k] == 1 ? names.even.at(k) : names.even.at(k) + "^" + std::to_string(e[k]));
    }
    for (Mask b = bits; b != 0; b &= b - 1) append(names.odd.at(static_cast<std::size_t>(std::countr_zero(b))));
    return out;
}

bool negative(const QComplex& c) { return (sgn(c.im) == 0 && sgn(c.re) < 0) || (sgn(c.re) == 0 && sgn(c.im) < 0); }

void append_term(std::string& out, const QComplex& coeff, const std::string& mono) {
    const bool neg = negative(coeff);
    const QComplex c = neg ? -coeff : coeff;
    std::string body;
    if (mono.empty()) body = print_scalar(c);
    else if (c == QComplex(1)) body = mono;
    else body = print_scalar(c) + "*" + mono;
    if (out.empty()) out = neg ? "-" + body : body;
    else out += (neg ? " - " : " + ") + body;
}

}  // namespace

PolySuper<QComplex> parse_polynomial(const std::string& src, const VariableNames& names) {
    return Parser<Polynomial<QComplex>>(src, names).parse();
}

GaussSuper<QComplex> parse_gausspoly(const std::string& src, const VariableNames& names) {
    return Parser<GaussPoly<QComplex>>(src, names).parse();
}

std::string print_scalar(const QComplex& c) {
    if (sgn(c.im) == 0) return to_string(c.re);
    const std::string im = c.im == 1 ? "i" : (c.im == -1 ? "-i" : to_string(c.im) + "i");
    if (sgn(c.re) == 0) return im;
    return "(" + to_string(c.re) + (sgn(c.im) > 0 ? "+" : "") + im + ")";
}

std::string print_expression(const PolySuper<QComplex>& f, const VariableNames& names) {
    std::string out;
    for (const auto& [bits, c] : f.coeffs())
        for (const auto& [e, v] : c.terms()) append_term(out, v, monomial(e, bits, names));
    return out.empty() ? "0" : out;
}

std::string print_expression(const GaussSuper<QComplex>& f, const VariableNames& names) {
    std::string out;
    for (const auto& [bits, c] : f.coeffs()) {
        bool enveloped = false;
        for (const auto& a : c.widths()) enveloped = enveloped || sgn(a) != 0;
        std::string env;
        if (enveloped) {
            env = "gauss(";
            for (std::size_t k = 0; k < c.widths().size(); ++k) env += (k ? "," : "") + to_string(c.widths()[k]);
            env += ")";
        }
        for (const auto& [e, v] : c.poly().terms()) {
            std::string mono = monomial(e, bits, names);
            if (enveloped) mono = mono.empty() ? env : mono + "*" + env;
            append_term(out, v, mono);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace smq
