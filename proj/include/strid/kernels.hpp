#pragma once

#include <cstddef>

#include "strid/types.hpp"

namespace strid::kernels {

/// Per-step scalar coefficients of the Nesterov-accelerated adaptive-moment
/// update. Computed once per step by the optimizer; the kernel applies them
/// elementwise over the flat real view of the variables.
struct NadamCoeffs {
    double beta1;
    double beta2;
    double one_m_beta1;
    double one_m_beta2;
    double mhat_m;   // mu_{t+1} / (1 - prod_{i<=t+1} mu_i)
    double mhat_g;   // (1 - mu_t) / (1 - prod_{i<=t} mu_i)
    double v_inv;    // 1 / (1 - beta2^t)
    double lr;
    double eps;
};

/// One table of kernel entry points. Two implementations exist: a scalar
/// reference and an AVX2 variant. Elementwise kernels are bit-identical
/// between the two; reduction kernels may differ by accumulation order.
struct Ops {
    const char* name;

    // y[i] += a * x[i]
    void (*axpy_cplx)(std::size_t n, cplx a, const cplx* x, cplx* y);
    void (*axpy_real)(std::size_t n, double a, const double* x, double* y);

    // column-scaled accumulate over dense column-major blocks:
    // y[:, j] += a[j] * x[:, j] for j < cols (leading dimension = rows)
    void (*axpy_cols_cplx)(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
                           cplx* y);
    void (*axpy_cols_real)(std::size_t rows, std::size_t cols, const double* a, const double* x,
                           double* y);

    // l1 += sum_i |z_i|, l2sq += sum_i |z_i|^2
    void (*norms_cplx)(std::size_t n, const cplx* z, double* l1, double* l2sq);
    void (*norms_real)(std::size_t n, const double* z, double* l1, double* l2sq);

    // out[i] = c1 * phase(r[i]) + c2 * r[i], with phase(0) = 0
    void (*sign_combine_cplx)(std::size_t n, const cplx* r, double c1, double c2, cplx* out);
    void (*sign_combine_real)(std::size_t n, const double* r, double c1, double c2, double* out);

    // In-place moment and parameter update over flat real arrays.
    void (*nadam_step)(std::size_t n, const NadamCoeffs& c, const double* g, double* m, double* v,
                       double* p);
};

/// Scalar reference implementation (always available).
const Ops& scalar_ops();

/// AVX2 implementation, or the scalar table when the CPU lacks AVX2+FMA.
const Ops& avx2_ops();

/// The table selected at runtime (AVX2 when supported, scalar otherwise).
const Ops& active_ops();

/// True when active_ops() is the AVX2 table.
bool simd_active();

}  // namespace strid::kernels
