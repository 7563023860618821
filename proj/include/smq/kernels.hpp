#pragma once

#include <cstddef>
#include <string>

#include "smq/numeric.hpp"

namespace smq {

/// Instruction set used by the numeric kernels. `automatic` picks AVX2+FMA when the CPU has it.
enum class KernelIsa { automatic, scalar, avx2 };

bool avx2_supported();
/// Overrides dispatch; avx2 on a CPU without it throws.
void set_kernel_isa(KernelIsa isa);
/// The instruction set kernels currently dispatch to (never `automatic`).
KernelIsa active_kernel_isa();
std::string to_string(KernelIsa isa);

/// Σ_k a_k b_k (no conjugation).
CDouble cdot(const CDouble* a, const CDouble* b, std::size_t n);
/// Σ_k w_k f_k with real weights.
CDouble weighted_sum(const double* w, const CDouble* f, std::size_t n);
/// y_r = Σ_c M[r·cols + c] v_c for r < rows.
void cgemv(const CDouble* M, const CDouble* v, CDouble* y, std::size_t rows, std::size_t cols);

namespace kernels {

CDouble cdot_scalar(const CDouble* a, const CDouble* b, std::size_t n);
CDouble weighted_sum_scalar(const double* w, const CDouble* f, std::size_t n);
CDouble cdot_avx2(const CDouble* a, const CDouble* b, std::size_t n);
CDouble weighted_sum_avx2(const double* w, const CDouble* f, std::size_t n);

}  // namespace kernels

}  // namespace smq
