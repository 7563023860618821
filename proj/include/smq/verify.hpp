#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smq/quantization.hpp"
#include "smq/random.hpp"
#include "smq/star.hpp"

namespace smq {

/// One line of a property-suite report. Exact checks report residual "0" on success.
struct CheckLine {
    std::string name;
    bool passed = false;
    std::string residual;
    std::string detail;
};

struct SuiteOptions {
    int m = 2;
    int n = 0;
    Rational theta{1, 2};
    Rational alpha{1};
    std::uint64_t seed = 1;
    int samples = 20;
    QuadratureSpec quad;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> checks;
    bool passed() const;
};

/// grassmann, star, hopf, oracle, quantization, symmetry, udf.
const std::vector<std::string>& suite_names();
/// Runs one suite, or every suite for "all". Throws std::invalid_argument for unknown names
/// or dimensions the suite cannot handle.
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& options);

/// Product of the generator words I and J by adjacent transpositions; equal neighbours cancel to
/// 1 (clifford) or kill the word (grassmann). Returns the sign (0 for a killed word) and the blade.
struct WordProduct {
    int sign = 1;
    Mask bits = 0;
};
WordProduct generator_word_product(Mask I, Mask J, bool clifford);

/// Coefficient of θ¹ in the graded commutator f ⋆ g − (−1)^{|f||g|} g ⋆ f, by exact
/// interpolation in θ at fixed α (the commutator is a polynomial in θ).
PolySuper<QComplex> commutator_theta_linear(const PolySuper<QComplex>& f, const PolySuper<QComplex>& g, const Rational& alpha,
                                            int m, int n);

/// max |a_I − b_I| / max(1, max |a_I|).
double relative_difference(const GrassmannElement<CDouble>& a, const GrassmannElement<CDouble>& b);

/// Real Heisenberg element with rational-valued x, w, a and odd ξ over ⋀ℝ^ring.
HeisenbergElement random_heisenberg(RandomRationals& rng, int n, int ring);
/// A state with two Gaussian terms on ℝ^{1|n} with coefficients over ⋀ℝ^ring.
QState random_qstate(RandomRationals& rng, int n, int ring);

}  // namespace smq
