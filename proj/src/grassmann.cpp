#include "smq/grassmann.hpp"

namespace smq {

IndexSet::IndexSet(Mask bits, int n) : bits_(bits), n_(n) {
    if (n < 0 || n > kMaxPublicGenerators) throw std::invalid_argument("IndexSet: n must be in [0, 16]");
    if (n < 32 && (bits >> n) != 0) throw std::invalid_argument("IndexSet: bits outside 1..n");
}

IndexSet IndexSet::from_list(const std::vector<int>& one_based, int n) {
    Mask bits = 0;
    for (int i : one_based) {
        if (i < 1 || i > n) throw std::invalid_argument("IndexSet: index out of range");
        bits |= Mask{1} << (i - 1);
    }
    return {bits, n};
}

IndexSet IndexSet::full(int n) { return {(Mask{1} << n) - 1, n}; }

IndexSet IndexSet::complement() const { return {((Mask{1} << n_) - 1) & ~bits_, n_}; }

std::vector<int> IndexSet::to_list() const {
    std::vector<int> out;
    for (int k = 0; k < n_; ++k)
        if (((bits_ >> k) & 1U) != 0) out.push_back(k + 1);
    return out;
}

int eps_sign(const IndexSet& I, const IndexSet& J) {
    if (I.n() != J.n()) throw std::invalid_argument("eps_sign: mismatched n");
    return wedge_sign(I.bits(), J.bits());
}

int clifford_coeff(const IndexSet& I, const IndexSet& J) {
    if (I.n() != J.n()) throw std::invalid_argument("clifford_coeff: mismatched n");
    return reorder_sign(I.bits(), J.bits());
}

int clifford_coeff_printed(const IndexSet& I, const IndexSet& J, PrintedCliffordVariant variant) {
    if (I.n() != J.n()) throw std::invalid_argument("clifford_coeff_printed: mismatched n");
    const Mask common = I.bits() & J.bits();
    const int d = popcount(common);
    const IndexSet i_minus(I.bits() & ~common, I.n());
    const IndexSet j_minus(J.bits() & ~common, J.n());
    const IndexSet inter(common, I.n());
    const IndexSet sym(I.bits() ^ J.bits(), I.n());
    int s = eps_sign(i_minus, j_minus) * eps_sign(inter, sym);
    const long e = variant == PrintedCliffordVariant::pairwise_IJ
                       ? static_cast<long>(d) * (d + 1) / 2 + static_cast<long>(I.size()) * J.size()
                       : static_cast<long>(d) * (d + 1) / 2 + static_cast<long>(I.size()) * d;
    if ((e & 1) != 0) s = -s;
    return s;
}

int permute_blade(Mask bits, const std::vector<int>& perm, Mask* out) {
    std::vector<int> images;
    while (bits != 0) {
        const int k = std::countr_zero(bits);
        bits &= bits - 1;
        images.push_back(perm.at(static_cast<std::size_t>(k)));
    }
    int inversions = 0;
    Mask result = 0;
    for (std::size_t a = 0; a < images.size(); ++a) {
        result |= Mask{1} << images[a];
        for (std::size_t b = a + 1; b < images.size(); ++b)
            if (images[a] > images[b]) ++inversions;
    }
    *out = result;
    return (inversions & 1) != 0 ? -1 : 1;
}

}  // namespace smq
