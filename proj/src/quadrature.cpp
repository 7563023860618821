#include "smq/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace smq {

void QuadratureSpec::validate() const {
    if (!(L > 0.0)) throw std::invalid_argument("QuadratureSpec: L must be positive");
    if (P < 16) throw std::invalid_argument("QuadratureSpec: P must be at least 16");
}

std::string QuadratureSpec::describe() const {
    std::ostringstream os;
    os << "L=" << L << ",P=" << P << "," << to_string(rule);
    return os.str();
}

QuadRule parse_quad_rule(const std::string& name) {
    if (name == "trapezoid") return QuadRule::trapezoid;
    if (name == "gauss-hermite" || name == "gauss_hermite") return QuadRule::gauss_hermite;
    throw std::invalid_argument("unknown quadrature rule '" + name + "'");
}

std::string to_string(QuadRule rule) { return rule == QuadRule::trapezoid ? "trapezoid" : "gauss-hermite"; }

Nodes1D trapezoid_nodes(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) throw std::invalid_argument("trapezoid_nodes: bad interval");
    Nodes1D n;
    n.h = (hi - lo) / (points - 1);
    for (int k = 0; k < points; ++k) {
        n.t.push_back(lo + n.h * k);
        n.w.push_back(k == 0 || k == points - 1 ? n.h / 2 : n.h);
    }
    return n;
}

void gauss_hermite(int points, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(points, points);
    for (int k = 1; k < points; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(static_cast<std::size_t>(points));
    weights.resize(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        nodes[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        weights[static_cast<std::size_t>(k)] = std::sqrt(std::numbers::pi) * v * v;
    }
}

Nodes1D make_nodes(const QuadratureSpec& spec, double center, double sigma) {
    spec.validate();
    if (!(sigma > 0.0)) throw std::invalid_argument("make_nodes: sigma must be positive");
    if (spec.rule == QuadRule::trapezoid) return trapezoid_nodes(center - spec.L * sigma, center + spec.L * sigma, spec.P);
    // ∫ f = Σ w_k e^{t_k²} f(c + s t_k) · s with s = √2 σ, so e^{−t²} matches a width-σ Gaussian.
    std::vector<double> t, w;
    gauss_hermite(spec.P, t, w);
    Nodes1D n;
    const double s = std::sqrt(2.0) * sigma;
    for (std::size_t k = 0; k < t.size(); ++k) {
        n.t.push_back(center + s * t[k]);
        n.w.push_back(w[k] * std::exp(t[k] * t[k]) * s);
    }
    return n;
}

}  // namespace smq
