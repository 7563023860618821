#include "smq/hopf.hpp"

#include "smq/parser.hpp"

namespace smq {

Rational max_residual(const PolySuper<QComplex>& r) {
    Rational best = 0;
    for (const auto& [bits, c] : r.coeffs())
        for (const auto& [e, v] : c.terms()) {
            const Rational a = abs(v.re);
            const Rational b = abs(v.im);
            if (a > best) best = a;
            if (b > best) best = b;
        }
    return best;
}

namespace {

class Recorder {
   public:
    Recorder(const HopfStructure& H) : names_(VariableNames::standard(H.m, H.n, H.mode == HopfStructure::Mode::heisenberg)) {}

    void record(const std::string& axiom, const PolySuper<QComplex>& residual, const PolySuper<QComplex>& input) {
        auto it = index_.find(axiom);
        if (it == index_.end()) {
            it = index_.emplace(axiom, results_.size()).first;
            results_.push_back({axiom, Rational(0), std::nullopt});
        }
        AxiomResult& r = results_[it->second];
        const Rational v = max_residual(residual);
        if (v > r.max_residual) r.max_residual = v;
        if (sgn(v) != 0 && !r.witness) r.witness = print_expression(input, names_);
    }
    std::vector<AxiomResult> take() { return std::move(results_); }

   private:
    VariableNames names_;
    std::map<std::string, std::size_t> index_;
    std::vector<AxiomResult> results_;
};

}  // namespace

std::vector<AxiomResult> verify_hopf_axioms(const HopfStructure& H, const std::vector<PolySuper<QComplex>>& sample) {
    Recorder rec(H);
    const int M = H.even_per_leg();
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const PolySuper<QComplex>& f = sample[k];
        const TensorSuper<QComplex> d = coproduct(f, H);
        rec.record("coassociativity", coproduct_on_leg(d, H, 0).f - coproduct_on_leg(d, H, 1).f, f);
        rec.record("counit_left", counit_on_leg(d, 0).f - f, f);
        rec.record("counit_right", counit_on_leg(d, 1).f - f, f);
        const PolySuper<QComplex> unit_eps = PolySuper<QComplex>::constant(M, H.n, counit(f, H));
        rec.record("antipode_left", multiply_legs(antipode_on_leg(d, 0), 0).f - unit_eps, f);
        rec.record("antipode_right", multiply_legs(antipode_on_leg(d, 1), 0).f - unit_eps, f);
        const PolySuper<QComplex>& g = sample[(k + 1) % sample.size()];
        rec.record("coproduct_multiplicative", coproduct(pointwise_mul(f, g), H).f - pointwise_mul(d.f, coproduct(g, H).f), f);
    }
    return rec.take();
}

std::optional<PolySuper<QComplex>> cocommutativity_witness(const HopfStructure& H, const std::vector<PolySuper<QComplex>>& sample) {
    for (const auto& f : sample) {
        const TensorSuper<QComplex> d = coproduct(f, H);
        if (!(graded_swap(d) == d)) return f;
    }
    return std::nullopt;
}

}  // namespace smq
