#include "smq/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace smq {

namespace {

Json blade_list(Mask bits) {
    Json b = Json::array();
    for (int k = 0; bits != 0; ++k, bits >>= 1)
        if ((bits & 1U) != 0) b.push_back(k + 1);
    return b;
}

Mask blade_mask(const Json& b, int n) {
    Mask bits = 0;
    for (const auto& k : b) {
        const int g = k.get<int>();
        if (g < 1 || g > n) throw std::invalid_argument("json: blade generator out of range");
        const Mask bit = Mask{1} << (g - 1);
        if ((bits & bit) != 0) throw std::invalid_argument("json: repeated generator in blade");
        bits |= bit;
    }
    return bits;
}

VariableNames ring_names(int N) {
    VariableNames names;
    for (int k = 1; k <= N; ++k) names.odd.push_back("e" + std::to_string(k));
    return names;
}

PolySuper<QComplex> ring_poly(const GrassmannElement<QComplex>& a) {
    PolySuper<QComplex> f(0, a.n());
    for (const auto& [bits, c] : a.terms()) f.add(bits, Polynomial<QComplex>::constant(0, c));
    return f;
}

template <class S>
void put_parts(Json& t, const S& c);
template <>
void put_parts(Json& t, const QComplex& c) {
    t["re"] = to_string(c.re);
    t["im"] = to_string(c.im);
}
template <>
void put_parts(Json& t, const CDouble& c) {
    t["re"] = format_double(c.real());
    t["im"] = format_double(c.imag());
}

template <class S>
Json poly_terms(const PolySuper<S>& f) {
    Json terms = Json::array();
    for (const auto& [bits, c] : f.coeffs())
        for (const auto& [e, v] : c.terms()) {
            Json t;
            t["blade"] = blade_list(bits);
            t["exponents"] = e;
            put_parts(t, v);
            terms.push_back(std::move(t));
        }
    return terms;
}

template <class S>
Json grassmann_json(const GrassmannElement<S>& a) {
    Json j;
    j["n"] = a.n();
    Json terms = Json::array();
    for (const auto& [bits, c] : a.terms()) {
        Json t;
        t["blade"] = blade_list(bits);
        put_parts(t, c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

Json to_json(const PolySuper<QComplex>& f, const VariableNames& names) {
    Json j;
    j["m"] = f.m();
    j["n"] = f.n();
    j["backend"] = "exact";
    j["expression"] = print_expression(f, names);
    j["terms"] = poly_terms(f);
    return j;
}

Json to_json(const PolySuper<CDouble>& f) {
    Json j;
    j["m"] = f.m();
    j["n"] = f.n();
    j["backend"] = "float";
    j["terms"] = poly_terms(f);
    return j;
}

Json to_json(const GaussSuper<QComplex>& f, const VariableNames& names) {
    Json j;
    j["m"] = f.m();
    j["n"] = f.n();
    j["backend"] = "exact";
    j["expression"] = print_expression(f, names);
    Json terms = Json::array();
    for (const auto& [bits, c] : f.coeffs()) {
        Json widths = Json::array();
        for (const auto& a : c.widths()) widths.push_back(to_string(a));
        for (const auto& [e, v] : c.poly().terms()) {
            Json t;
            t["blade"] = blade_list(bits);
            t["exponents"] = e;
            t["widths"] = widths;
            put_parts(t, v);
            terms.push_back(std::move(t));
        }
    }
    j["terms"] = std::move(terms);
    return j;
}

PolySuper<QComplex> polysuper_from_json(const Json& j) {
    if (j.value("backend", std::string("exact")) != "exact") throw std::invalid_argument("json: only exact superfunctions can be read");
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    PolySuper<QComplex> f(m, n);
    for (const auto& t : j.at("terms")) {
        const auto e = t.at("exponents").get<Exponents>();
        if (static_cast<int>(e.size()) != m) throw std::invalid_argument("json: exponent length");
        Polynomial<QComplex> p(m);
        p.add_term(e, QComplex(parse_rational(t.at("re").get<std::string>()), parse_rational(t.at("im").get<std::string>())));
        f.add(blade_mask(t.at("blade"), n), p);
    }
    return f;
}

Json to_json(const GrassmannElement<QComplex>& a) { return grassmann_json(a); }
Json to_json(const GrassmannElement<CDouble>& a) { return grassmann_json(a); }

VariableNames tensor_names(const VariableNames& base, int legs) {
    VariableNames r;
    for (int l = 1; l <= legs; ++l)
        for (const auto& v : base.even) r.even.push_back(v + "_" + std::to_string(l));
    for (int l = 1; l <= legs; ++l)
        for (const auto& v : base.odd) r.odd.push_back(v + "_" + std::to_string(l));
    return r;
}

Json to_json(const TensorSuper<QComplex>& t, const VariableNames& base) {
    Json j = to_json(t.f, tensor_names(base, t.legs));
    j["legs"] = t.legs;
    return j;
}

ExactMatrix supermatrix_from_json(const Json& j, int m, int n) {
    if (!j.is_object()) throw std::invalid_argument("supermatrix json: expected an object");
    m = j.value("m", m);
    n = j.value("n", n);
    const int N = j.value("N", 0);
    if (j.value("identity", false)) return ExactMatrix::identity(m, n, N);
    const Json& rows = j.at("entries");
    const int d = m + n;
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) throw std::invalid_argument("supermatrix json: need m+n rows");
    const VariableNames names = ring_names(N);
    ExactMatrix A(m, n, N);
    for (int r = 0; r < d; ++r) {
        const Json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != d) throw std::invalid_argument("supermatrix json: need m+n columns");
        for (int c = 0; c < d; ++c) {
            const Json& e = row[static_cast<std::size_t>(c)];
            const std::string src = e.is_string() ? e.get<std::string>() : e.dump();
            A.at(r, c) = as_grassmann(parse_polynomial(src, names));
        }
    }
    if (!A.parity_consistent()) throw std::invalid_argument("supermatrix json: entries have the wrong parity for their block");
    return A;
}

Json to_json(const ExactMatrix& A) {
    const VariableNames names = ring_names(A.N());
    Json j;
    j["m"] = A.m();
    j["n"] = A.n();
    j["N"] = A.N();
    Json rows = Json::array();
    for (int r = 0; r < A.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < A.dim(); ++c) row.push_back(print_expression(ring_poly(A.at(r, c)), names));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

Json to_json(const OperatorMatrix& op) {
    Json j;
    j["basis"] = {{"type", "hermite"},
                  {"levels", op.basis.N},
                  {"odd", op.basis.n},
                  {"theta", format_double(op.basis.theta)},
                  {"index", "J*levels + a"}};
    j["dim"] = op.M.rows();
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < op.M.rows(); ++r)
        for (Eigen::Index c = 0; c < op.M.cols(); ++c) entries.push_back({format_double(op.M(r, c).real()), format_double(op.M(r, c).imag())});
    j["entries"] = std::move(entries);
    return j;
}

}  // namespace smq
