#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "smq/superfunction.hpp"

namespace smq {

/// Names of the even variables and odd generators an expression may use.
struct VariableNames {
    std::vector<std::string> even;
    std::vector<std::string> odd;

    /// x1..x{m/2}, w1..w{m/2} (then "a" when `central`), th1..thn. Odd m uses x1..xm.
    static VariableNames standard(int m, int n, bool central = false);
};

/// Syntax or name error with a 1-based line and column.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string& what, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

   private:
    int line_;
    int column_;
};

/// Grammar (LL(1), ^ binds tighter than unary minus, then *, then + −):
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := ('-' | '+') unary | power
///   power  := atom ('^' integer)?
///   atom   := number | number 'i' | 'i' | name | 'gauss' '(' number (',' number)* ')' | '(' expr ')'
///   number := digits ('.' digits)? ('/' digits)?
/// Odd generators multiply by the wedge rule, so th1*th1 normalizes to 0.
PolySuper<QComplex> parse_polynomial(const std::string& src, const VariableNames& names);
/// As above; gauss(a1, …, am) multiplies by exp(−Σ a_i z_i²/2). Summands on the same blade
/// must carry the same envelope.
GaussSuper<QComplex> parse_gausspoly(const std::string& src, const VariableNames& names);

/// Canonical text form; parse(print(f)) == f.
std::string print_expression(const PolySuper<QComplex>& f, const VariableNames& names);
std::string print_expression(const GaussSuper<QComplex>& f, const VariableNames& names);
std::string print_scalar(const QComplex& c);

}  // namespace smq
