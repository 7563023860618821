#pragma once

#include <string>
#include <vector>

namespace smq {

enum class QuadRule { trapezoid, gauss_hermite };

/// Per-axis rule: P points covering ±L Gaussian widths around the centre.
struct QuadratureSpec {
    double L = 8.0;
    int P = 128;
    QuadRule rule = QuadRule::trapezoid;

    void validate() const;
    std::string describe() const;
};

QuadRule parse_quad_rule(const std::string& name);
std::string to_string(QuadRule rule);

/// Nodes and weights approximating ∫ f(t) dt on the real line for f concentrated near
/// `center` with scale `sigma`.
struct Nodes1D {
    std::vector<double> t;
    std::vector<double> w;
    /// Spacing of a uniform rule; 0 for Gauss–Hermite.
    double h = 0.0;
};
Nodes1D make_nodes(const QuadratureSpec& spec, double center, double sigma);
/// Uniform trapezoid rule on [lo, hi] with `points` nodes.
Nodes1D trapezoid_nodes(double lo, double hi, int points);
/// Physicists' Gauss–Hermite nodes and weights for weight e^{−t²} (Golub–Welsch).
void gauss_hermite(int points, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace smq
