#include "smq/numeric.hpp"

#include <cctype>

namespace smq {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw std::invalid_argument("bad rational literal: " + s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad rational literal: " + s);
        for (std::size_t k = (digits[0] == '-' || digits[0] == '+') ? 1 : 0; k < digits.size(); ++k) {
            if (std::isdigit(static_cast<unsigned char>(digits[k])) == 0)
                throw std::invalid_argument("bad rational literal: " + s);
        }
        if (digits[0] == '+') digits.erase(0, 1);
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    const auto slash = s.find('/');
    const std::string num_s = s.substr(0, slash);
    const std::string den_s = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto check = [&](const std::string& t, bool allow_sign) {
        if (t.empty()) throw std::invalid_argument("bad rational literal: " + s);
        std::size_t k = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) k = 1;
        if (k == t.size()) throw std::invalid_argument("bad rational literal: " + s);
        for (; k < t.size(); ++k)
            if (std::isdigit(static_cast<unsigned char>(t[k])) == 0)
                throw std::invalid_argument("bad rational literal: " + s);
    };
    check(num_s, true);
    check(den_s, false);
    mpz_class num(num_s[0] == '+' ? num_s.substr(1) : num_s, 10);
    mpz_class den(den_s, 10);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const QComplex& z) {
    if (is_zero(z)) return "0";
    std::string out;
    if (sgn(z.re) != 0) out = to_string(z.re);
    if (sgn(z.im) != 0) {
        if (!out.empty() && sgn(z.im) > 0) out += "+";
        out += to_string(z.im) + "i";
    }
    return out;
}

}  // namespace smq
