#include <cmath>

#include "strid/kernels.hpp"

// Scalar reference kernels. Operation order matters: the AVX2 variants mirror
// these sequences exactly so that elementwise kernels stay bit-identical.

namespace strid::kernels {
namespace {

void axpy_cplx_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double are = a.real(), aim = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xre = x[i].real(), xim = x[i].imag();
        const double tre = aim * xim;
        const double tim = aim * xre;
        const double pre = std::fma(are, xre, -tre);
        const double pim = std::fma(are, xim, tim);
        y[i] = cplx(y[i].real() + pre, y[i].imag() + pim);
    }
}

void axpy_real_scalar(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void axpy_cols_cplx_scalar(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
                           cplx* y) {
    for (std::size_t j = 0; j < cols; ++j)
        axpy_cplx_scalar(rows, a[j], x + j * rows, y + j * rows);
}

void axpy_cols_real_scalar(std::size_t rows, std::size_t cols, const double* a, const double* x,
                           double* y) {
    for (std::size_t j = 0; j < cols; ++j)
        axpy_real_scalar(rows, a[j], x + j * rows, y + j * rows);
}

void norms_cplx_scalar(std::size_t n, const cplx* z, double* l1, double* l2sq) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = z[i].real(), im = z[i].imag();
        const double sq = re * re + im * im;
        s1 += std::sqrt(sq);
        s2 += sq;
    }
    *l1 += s1;
    *l2sq += s2;
}

void norms_real_scalar(std::size_t n, const double* z, double* l1, double* l2sq) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = z[i] * z[i];
        s1 += std::fabs(z[i]);
        s2 += sq;
    }
    *l1 += s1;
    *l2sq += s2;
}

void sign_combine_cplx_scalar(std::size_t n, const cplx* r, double c1, double c2, cplx* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = r[i].real(), im = r[i].imag();
        const double sq = re * re + im * im;
        const double m = std::sqrt(sq);
        const double t = m > 0.0 ? c1 / m + c2 : c2;
        out[i] = cplx(re * t, im * t);
    }
}

void sign_combine_real_scalar(std::size_t n, const double* r, double c1, double c2, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double sgn = (r[i] > 0.0 ? 1.0 : 0.0) - (r[i] < 0.0 ? 1.0 : 0.0);
        out[i] = c1 * sgn + c2 * r[i];
    }
}

void nadam_step_scalar(std::size_t n, const NadamCoeffs& c, const double* g, double* m, double* v,
                       double* p) {
    for (std::size_t i = 0; i < n; ++i) {
        const double gi = g[i];
        m[i] = std::fma(c.beta1, m[i], c.one_m_beta1 * gi);
        const double gg = gi * gi;
        v[i] = std::fma(c.beta2, v[i], c.one_m_beta2 * gg);
        const double num = std::fma(c.mhat_m, m[i], c.mhat_g * gi);
        const double den = std::sqrt(v[i] * c.v_inv) + c.eps;
        p[i] -= (c.lr * num) / den;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table{
        "scalar",
        axpy_cplx_scalar,
        axpy_real_scalar,
        axpy_cols_cplx_scalar,
        axpy_cols_real_scalar,
        norms_cplx_scalar,
        norms_real_scalar,
        sign_combine_cplx_scalar,
        sign_combine_real_scalar,
        nadam_step_scalar,
    };
    return table;
}

}  // namespace strid::kernels
