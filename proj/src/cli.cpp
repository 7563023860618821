#include "smq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "smq/io.hpp"
#include "smq/oracle.hpp"
#include "smq/parallel.hpp"
#include "smq/parser.hpp"
#include "smq/symmetry.hpp"
#include "smq/udf.hpp"
#include "smq/verify.hpp"

namespace smq {

namespace {

using PS = PolySuper<QComplex>;

/// Raised for bad flag values found after CLI11 parsing; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Common {
    int m = 2;
    int n = 0;
    std::string theta = "1/2";
    std::string alpha = "1";
    std::string backend = "exact";
    std::string quad;
    std::string format = "json";
    std::string config;
    std::uint64_t seed = 1;
    int threads = 0;
};

struct Context {
    Common c;
    QuadratureSpec spec;
    Rational theta;
    Rational alpha;
    std::ostream& out;

    bool json() const { return c.format == "json"; }
    bool exact() const { return c.backend == "exact"; }
    DeformationParams params(int m, int n) const { return DeformationParams(theta, alpha, m, n); }
    DeformationParams params() const { return params(c.m, c.n); }
    VariableNames names(bool central = false) const { return VariableNames::standard(c.m, c.n, central); }

    Json envelope(const std::string& command) const {
        Json j;
        j["command"] = command;
        j["params"] = {{"m", c.m}, {"n", c.n}, {"theta", to_string(theta)}, {"alpha", to_string(alpha)}, {"backend", c.backend}};
        return j;
    }
    void emit(const Json& j) const { out << j.dump(2) << "\n"; }
    void require_exact(const std::string& command) const {
        if (!exact()) throw UsageError(command + ": only the exact backend is supported");
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--m", c.m, "even dimension");
    sub->add_option("--n", c.n, "odd dimension");
    sub->add_option("--theta", c.theta, "deformation parameter p/q (use --theta=-1/3 for negatives)");
    sub->add_option("--alpha", c.alpha, "odd-sector parameter p/q");
    sub->add_option("--backend", c.backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--quad", c.quad, "quadrature L,P[,rule]");
    sub->add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--config", c.config, "JSON file with quadrature/threads/seed defaults");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--threads", c.threads, "worker threads (default $SMQ_THREADS or hardware)");
}

QuadratureSpec parse_quad(const std::string& text, QuadratureSpec spec) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("--quad expects L,P or L,P,rule");
    try {
        spec.L = std::stod(parts[0]);
        spec.P = std::stoi(parts[1]);
    } catch (const std::exception&) {
        throw UsageError("--quad: L and P must be numbers");
    }
    if (parts.size() == 3) spec.rule = parse_quad_rule(parts[2]);
    return spec;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

/// Defaults < config file < explicit flags.
Context make_context(Common c, CLI::App* sub, std::ostream& out) {
    QuadratureSpec spec;
    if (!c.config.empty()) {
        const Json cfg = read_json_file(c.config);
        if (cfg.contains("quadrature")) {
            const Json& q = cfg["quadrature"];
            spec.L = q.value("L", spec.L);
            spec.P = q.value("P", spec.P);
            if (q.contains("rule")) spec.rule = parse_quad_rule(q["rule"].get<std::string>());
        }
        if (sub->count("--threads") == 0 && cfg.contains("threads")) c.threads = cfg["threads"].get<int>();
        if (sub->count("--seed") == 0 && cfg.contains("seed")) c.seed = cfg["seed"].get<std::uint64_t>();
    }
    if (!c.quad.empty()) spec = parse_quad(c.quad, spec);
    spec.validate();
    if (c.threads < 0) throw UsageError("--threads must be non-negative");
    if (c.threads > 0) set_thread_count(c.threads);
    if (c.m < 0 || c.n < 0 || c.n > kMaxPublicGenerators) throw UsageError("--m/--n out of range");
    Context ctx{c, spec, parse_rational(c.theta), parse_rational(c.alpha), out};
    return ctx;
}

// ---------------------------------------------------------------------------

int cmd_star(const Context& ctx, const std::vector<std::string>& exprs, const std::vector<double>& at) {
    const DeformationParams p = ctx.params();
    Json j = ctx.envelope("star");
    if (!at.empty()) {
        if (ctx.exact()) throw UsageError("star --at needs --backend float");
        if (static_cast<int>(at.size()) != ctx.c.m) throw UsageError("star --at needs m coordinates");
        const auto f = to_float(parse_gausspoly(exprs[0], ctx.names()));
        const auto g = to_float(parse_gausspoly(exprs[1], ctx.names()));
        const auto v = star_series_at(f, g, p, at);
        if (!ctx.json()) {
            for (const auto& [bits, c] : v.terms()) ctx.out << "blade " << bits << ": " << format_double(c.real()) << " " << format_double(c.imag()) << "\n";
            return exit_ok;
        }
        j["result"] = to_json(v);
        ctx.emit(j);
        return exit_ok;
    }
    const PS f = parse_polynomial(exprs[0], ctx.names());
    const PS g = parse_polynomial(exprs[1], ctx.names());
    if (ctx.exact()) {
        const PS r = star(f, g, p);
        if (!ctx.json()) {
            ctx.out << print_expression(r, ctx.names()) << "\n";
            return exit_ok;
        }
        j["result"] = to_json(r, ctx.names());
    } else {
        j["result"] = to_json(star(to_float(f), to_float(g), p));
        if (!ctx.json()) {
            ctx.out << j["result"]["terms"].dump() << "\n";
            return exit_ok;
        }
    }
    ctx.emit(j);
    return exit_ok;
}

int cmd_poisson(const Context& ctx, const std::vector<std::string>& exprs) {
    const DeformationParams p = ctx.params();
    const PS f = parse_polynomial(exprs[0], ctx.names());
    const PS g = parse_polynomial(exprs[1], ctx.names());
    Json j = ctx.envelope("poisson");
    if (ctx.exact()) {
        const PS r = poisson_bracket(f, g, p);
        if (!ctx.json()) {
            ctx.out << print_expression(r, ctx.names()) << "\n";
            return exit_ok;
        }
        j["result"] = to_json(r, ctx.names());
    } else {
        j["result"] = to_json(poisson_bracket(to_float(f), to_float(g), p));
    }
    ctx.emit(j);
    return exit_ok;
}

HopfStructure hopf_from(const Context& ctx, const std::string& mode) {
    if (mode == "flat") return HopfStructure(HopfStructure::Mode::flat, ctx.c.m, ctx.c.n);
    if (mode == "heisenberg") {
        if (ctx.c.m % 2 != 0) throw UsageError("heisenberg needs even --m");
        return HopfStructure(HopfStructure::Mode::heisenberg, ctx.c.m, ctx.c.n);
    }
    throw UsageError("--hopf must be flat or heisenberg");
}

int cmd_coproduct(const Context& ctx, const std::string& expr, const std::string& mode, bool antipode_only) {
    ctx.require_exact(antipode_only ? "antipode" : "coproduct");
    const HopfStructure H = hopf_from(ctx, mode);
    const VariableNames names = ctx.names(H.mode == HopfStructure::Mode::heisenberg);
    const PS f = parse_polynomial(expr, names);
    Json j = ctx.envelope(antipode_only ? "antipode" : "coproduct");
    j["hopf"] = H.name();
    if (antipode_only) {
        const PS r = antipode(f, H);
        if (!ctx.json()) {
            ctx.out << print_expression(r, names) << "\n";
            return exit_ok;
        }
        j["result"] = to_json(r, names);
    } else {
        const TensorSuper<QComplex> t = coproduct(f, H);
        if (!ctx.json()) {
            ctx.out << print_expression(t.f, tensor_names(names, t.legs)) << "\n";
            return exit_ok;
        }
        j["result"] = to_json(t, names);
    }
    ctx.emit(j);
    return exit_ok;
}

int cmd_quantize(const Context& ctx, const std::string& expr, int levels, const std::string& which) {
    if (ctx.c.m != 2) throw UsageError("quantize: needs --m 2");
    if (levels < 1) throw UsageError("quantize: --levels must be positive");
    const OmegaCoefficients coeffs = which == "printed" ? OmegaCoefficients::printed : OmegaCoefficients::computed;
    const DeformationParams p = ctx.params();
    const auto f = to_float(parse_gausspoly(expr, ctx.names()));
    const OperatorMatrix op = omega_full(f, HermiteBasis(levels, ctx.c.n, ctx.theta.get_d()), p, ctx.spec, coeffs);
    if (!ctx.json()) {
        ctx.out << "dim " << op.M.rows() << " (" << ctx.spec.describe() << ")\n";
        for (Eigen::Index r = 0; r < op.M.rows(); ++r) {
            for (Eigen::Index c = 0; c < op.M.cols(); ++c)
                ctx.out << (c == 0 ? "" : " ") << format_double(op.M(r, c).real()) << "," << format_double(op.M(r, c).imag());
            ctx.out << "\n";
        }
        return exit_ok;
    }
    Json j = ctx.envelope("quantize");
    j["quadrature"] = ctx.spec.describe();
    j["coefficients"] = which;
    j["result"] = to_json(op);
    ctx.emit(j);
    return exit_ok;
}

int cmd_osp_check(const Context& ctx, const std::string& path, const std::string& form_name, bool m_given, bool n_given) {
    ctx.require_exact("osp-check");
    Json input = read_json_file(path);
    if (m_given) input["m"] = ctx.c.m;
    if (n_given) input["n"] = ctx.c.n;
    const ExactMatrix A = supermatrix_from_json(input, ctx.c.m, ctx.c.n);
    const OspForm form = form_name == "omega" ? OspForm::omega : OspForm::omega_tilde;
    const DeformationParams p = ctx.params(A.m(), A.n());
    const OspResult res = osp_membership(A, p, form);
    if (!ctx.json()) {
        ctx.out << (res.member ? "member" : "not a member") << "\n";
    } else {
        Json j = ctx.envelope("osp-check");
        j["params"]["m"] = A.m();
        j["params"]["n"] = A.n();
        j["form"] = form_name;
        j["member"] = res.member;
        j["residual"] = to_json(res.residual);
        ctx.emit(j);
    }
    return res.member ? exit_ok : exit_verification_failed;
}

int cmd_udf(const Context& ctx, const std::string& kind, const std::string& axiom, const std::vector<std::string>& exprs) {
    ctx.require_exact("udf");
    const ActionSpec action = kind == "odd" ? ActionSpec::odd_translation(ctx.c.n) : ActionSpec::translation(ctx.c.m, ctx.c.n);
    const DeformationParams p = ctx.params(action.m, action.n);
    const VariableNames names = VariableNames::standard(action.m, action.n);
    std::vector<PS> el;
    for (const auto& e : exprs) el.push_back(parse_polynomial(e, names));
    auto need = [&](std::size_t k) {
        if (el.size() != k) throw UsageError("udf --axiom " + axiom + " needs " + std::to_string(k) + " expressions");
    };
    Json j = ctx.envelope("udf");
    j["params"]["m"] = action.m;
    j["action"] = kind;
    j["axiom"] = axiom;
    PS residual(action.m, action.n);
    int legs = 1;
    if (axiom == "product") {
        need(2);
        const PS r = deformed_product(el[0], el[1], action, p);
        if (!ctx.json()) {
            ctx.out << print_expression(r, names) << "\n";
            return exit_ok;
        }
        j["result"] = to_json(r, names);
        ctx.emit(j);
        return exit_ok;
    }
    if (axiom == "twist") {
        need(2);
        const PS d = deformed_product(el[0], el[1], action, p);
        residual = twisted_multiply(tensor(el[0], el[1], action.hopf()), action, p) - d;
        residual += d - star(el[0], el[1], p);
    } else if (axiom == "associativity") {
        need(3);
        residual = deformed_product(deformed_product(el[0], el[1], action, p), el[2], action, p) -
                   deformed_product(el[0], deformed_product(el[1], el[2], action, p), action, p);
    } else if (axiom == "coaction") {
        need(1);
        const CoactionResidual r = coaction_residual(el[0], action);
        j["coassociativity"] = to_json(TensorSuper<QComplex>(3, action.m, action.n, r.coassociativity), names);
        j["counit"] = to_json(r.counit, names);
        j["passed"] = r.zero();
        if (!ctx.json()) ctx.out << (r.zero() ? "coaction axioms hold" : "coaction axioms FAIL") << "\n";
        else ctx.emit(j);
        return r.zero() ? exit_ok : exit_verification_failed;
    } else if (axiom == "comodule" || axiom == "comodule-deformed") {
        need(2);
        residual = comodule_residual(el[0], el[1], action, p, axiom == "comodule-deformed");
        legs = 2;
    } else {
        throw UsageError("--axiom must be product, twist, associativity, coaction, comodule or comodule-deformed");
    }
    const bool ok = residual.is_zero();
    if (!ctx.json()) {
        ctx.out << axiom << ": residual " << to_string(max_residual(residual)) << (ok ? "" : " FAIL") << "\n";
    } else {
        j["residual"] = legs == 1 ? to_json(residual, names) : to_json(TensorSuper<QComplex>(legs, action.m, action.n, residual), names);
        j["max_residual"] = to_string(max_residual(residual));
        j["passed"] = ok;
        ctx.emit(j);
    }
    return ok ? exit_ok : exit_verification_failed;
}

int cmd_verify(const Context& ctx, const std::string& suite, int samples) {
    SuiteOptions o;
    o.m = ctx.c.m;
    o.n = ctx.c.n;
    o.theta = ctx.theta;
    o.alpha = ctx.alpha;
    o.seed = ctx.c.seed;
    o.samples = samples;
    o.quad = ctx.spec;
    const std::vector<SuiteReport> reports = run_suite(suite, o);
    bool ok = true;
    Json list = Json::array();
    for (const auto& r : reports) {
        ok = ok && r.passed();
        Json checks = Json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"detail", c.detail}});
            if (!ctx.json())
                ctx.out << (c.passed ? "[PASS] " : "[FAIL] ") << r.suite << "." << c.name << " residual=" << c.residual
                        << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        }
        list.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"checks", std::move(checks)}});
    }
    if (ctx.json()) {
        Json j = ctx.envelope("verify");
        j["params"]["seed"] = ctx.c.seed;
        j["params"]["samples"] = samples;
        j["suites"] = std::move(list);
        j["passed"] = ok;
        ctx.emit(j);
    }
    return ok ? exit_ok : exit_verification_failed;
}

int cmd_oracle_xcheck(const Context& ctx, const std::vector<std::string>& exprs, int points, double tol) {
    if (ctx.c.m != 2) throw UsageError("oracle-xcheck: needs --m 2");
    if (points < 1) throw UsageError("oracle-xcheck: --points must be positive");
    const DeformationParams p = ctx.params();
    const auto f = to_float(parse_gausspoly(exprs[0], ctx.names()));
    const auto g = to_float(parse_gausspoly(exprs[1], ctx.names()));
    RandomRationals rng(ctx.c.seed);
    Json rows = Json::array();
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        const std::vector<double> z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto a = star_series_at(f, g, p, z);
        const auto b = star_integral(f, g, p, z, ctx.spec).value;
        const double rel = relative_difference(a, b);
        worst = std::max(worst, rel);
        rows.push_back({{"z", {format_double(z[0]), format_double(z[1])}}, {"series", to_json(a)}, {"integral", to_json(b)},
                        {"relative_difference", format_double(rel)}});
        if (!ctx.json())
            ctx.out << "z=(" << format_double(z[0]) << ", " << format_double(z[1]) << ") relative difference " << format_double(rel) << "\n";
    }
    const bool ok = worst < tol;
    if (ctx.json()) {
        Json j = ctx.envelope("oracle-xcheck");
        j["quadrature"] = ctx.spec.describe();
        j["tolerance"] = format_double(tol);
        j["points"] = std::move(rows);
        j["max_relative_difference"] = format_double(worst);
        j["passed"] = ok;
        ctx.emit(j);
    }
    return ok ? exit_ok : exit_verification_failed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graded Moyal-Clifford star products, Hopf structures and quantization", "smq"};
    app.require_subcommand(1);
    Common common;
    std::vector<std::string> exprs;
    std::vector<double> at;
    std::string hopf_mode = "flat", coeffs = "computed", form = "omega_tilde", action = "translation", axiom = "product",
                suite = "all", path;
    int levels = 8, samples = 20, points = 3;
    double tol = 1e-6;

    auto* star_cmd = app.add_subcommand("star", "graded star product of two expressions");
    star_cmd->add_option("exprs", exprs, "two expressions")->expected(2)->required();
    star_cmd->add_option("--at", at, "float backend: evaluate gauss() expressions at this body point")->delimiter(',');
    auto* poisson_cmd = app.add_subcommand("poisson", "Poisson bracket of two expressions");
    poisson_cmd->add_option("exprs", exprs, "two expressions")->expected(2)->required();
    auto* coproduct_cmd = app.add_subcommand("coproduct", "coproduct of an expression");
    coproduct_cmd->add_option("exprs", exprs, "expression")->expected(1)->required();
    coproduct_cmd->add_option("--hopf", hopf_mode, "flat | heisenberg");
    auto* antipode_cmd = app.add_subcommand("antipode", "antipode of an expression");
    antipode_cmd->add_option("exprs", exprs, "expression")->expected(1)->required();
    antipode_cmd->add_option("--hopf", hopf_mode, "flat | heisenberg");
    auto* quantize_cmd = app.add_subcommand("quantize", "operator matrix of a gauss() symbol in the Hermite basis (m = 2)");
    quantize_cmd->add_option("exprs", exprs, "symbol")->expected(1)->required();
    quantize_cmd->add_option("--levels", levels, "Hermite levels N");
    quantize_cmd->add_option("--coefficients", coeffs, "computed | printed")->check(CLI::IsMember({"computed", "printed"}));
    auto* osp_cmd = app.add_subcommand("osp-check", "orthosymplectic membership of a supermatrix read from JSON");
    osp_cmd->add_option("file", path, "supermatrix JSON")->required();
    osp_cmd->add_option("--form", form, "omega_tilde | omega")->check(CLI::IsMember({"omega_tilde", "omega"}));
    auto* udf_cmd = app.add_subcommand("udf", "deformed products and axioms of the twist");
    udf_cmd->add_option("exprs", exprs, "one to three expressions")->expected(1, 3)->required();
    udf_cmd->add_option("--action", action, "translation | odd")->check(CLI::IsMember({"translation", "odd"}));
    udf_cmd->add_option("--axiom", axiom, "product | twist | associativity | coaction | comodule | comodule-deformed");
    auto* verify_cmd = app.add_subcommand("verify", "randomized property suites");
    verify_cmd->add_option("--suite", suite, "all | grassmann | star | hopf | oracle | quantization | symmetry | udf");
    verify_cmd->add_option("--samples", samples, "random samples per property");
    auto* xcheck_cmd = app.add_subcommand("oracle-xcheck", "series star versus the integral oracle at random points");
    xcheck_cmd->add_option("exprs", exprs, "two gauss() expressions")->expected(2)->required();
    xcheck_cmd->add_option("--points", points, "random body points in [-1, 1]^2");
    xcheck_cmd->add_option("--tol", tol, "relative tolerance");

    for (auto* sub : app.get_subcommands({})) add_common(sub, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        const Context ctx = make_context(common, sub, out);
        if (sub == star_cmd) return cmd_star(ctx, exprs, at);
        if (sub == poisson_cmd) return cmd_poisson(ctx, exprs);
        if (sub == coproduct_cmd) return cmd_coproduct(ctx, exprs[0], hopf_mode, false);
        if (sub == antipode_cmd) return cmd_coproduct(ctx, exprs[0], hopf_mode, true);
        if (sub == quantize_cmd) return cmd_quantize(ctx, exprs[0], levels, coeffs);
        if (sub == osp_cmd) return cmd_osp_check(ctx, path, form, sub->count("--m") > 0, sub->count("--n") > 0);
        if (sub == udf_cmd) return cmd_udf(ctx, action, axiom, exprs);
        if (sub == verify_cmd) return cmd_verify(ctx, suite, samples);
        if (sub == xcheck_cmd) return cmd_oracle_xcheck(ctx, exprs, points, tol);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_verification_failed;
    }
    return exit_usage;
}

}  // namespace smq
