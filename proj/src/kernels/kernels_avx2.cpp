#include <cmath>

#include "strid/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define STRID_KERNELS_X86 1
#include <immintrin.h>
#else
#define STRID_KERNELS_X86 0
#endif

// AVX2 kernels, 4 doubles (2 complex) per vector. Elementwise kernels follow
// the exact operation sequence of the scalar reference so results match bit
// for bit; the norm reductions use four independent lanes and therefore agree
// with the reference only up to rounding.

namespace strid::kernels {

#if STRID_KERNELS_X86

namespace {

inline double reduce4(__m256d v) {
    // Fixed order: lane0 + lane1 + lane2 + lane3.
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
}

void axpy_cplx_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d xsw = _mm256_permute_pd(xv, 0x5);  // (im, re) pairs
        const __m256d t = _mm256_mul_pd(aim, xsw);
        const __m256d prod = _mm256_fmaddsub_pd(are, xv, t);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, prod));
    }
    if (i < n) scalar_ops().axpy_cplx(n - i, a, x + i, y + i);
}

void axpy_real_avx2(std::size_t n, double a, const double* x, double* y) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, xv, yv));
    }
    for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void axpy_cols_cplx_avx2(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
                         cplx* y) {
    for (std::size_t j = 0; j < cols; ++j) axpy_cplx_avx2(rows, a[j], x + j * rows, y + j * rows);
}

void axpy_cols_real_avx2(std::size_t rows, std::size_t cols, const double* a, const double* x,
                         double* y) {
    for (std::size_t j = 0; j < cols; ++j) axpy_real_avx2(rows, a[j], x + j * rows, y + j * rows);
}

void norms_cplx_avx2(std::size_t n, const cplx* z, double* l1, double* l2sq) {
    const double* zp = reinterpret_cast<const double*>(z);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(zp + 2 * i);      // r0 i0 r1 i1
        const __m256d v1 = _mm256_loadu_pd(zp + 2 * i + 4);  // r2 i2 r3 i3
        const __m256d t0 = _mm256_permute2f128_pd(v0, v1, 0x20);
        const __m256d t1 = _mm256_permute2f128_pd(v0, v1, 0x31);
        const __m256d re = _mm256_unpacklo_pd(t0, t1);
        const __m256d im = _mm256_unpackhi_pd(t0, t1);
        const __m256d sq = _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
        acc1 = _mm256_add_pd(acc1, _mm256_sqrt_pd(sq));
        acc2 = _mm256_add_pd(acc2, sq);
    }
    double s1 = reduce4(acc1), s2 = reduce4(acc2);
    for (; i < n; ++i) {
        const double re = z[i].real(), im = z[i].imag();
        const double sq = re * re + im * im;
        s1 += std::sqrt(sq);
        s2 += sq;
    }
    *l1 += s1;
    *l2sq += s2;
}

void norms_real_avx2(std::size_t n, const double* z, double* l1, double* l2sq) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(z + i);
        acc1 = _mm256_add_pd(acc1, _mm256_and_pd(v, absmask));
        acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(v, v));
    }
    double s1 = reduce4(acc1), s2 = reduce4(acc2);
    for (; i < n; ++i) {
        s1 += std::fabs(z[i]);
        s2 += z[i] * z[i];
    }
    *l1 += s1;
    *l2sq += s2;
}

void sign_combine_cplx_avx2(std::size_t n, const cplx* r, double c1, double c2, cplx* out) {
    const double* rp = reinterpret_cast<const double*>(r);
    double* op = reinterpret_cast<double*>(out);
    const __m256d c1v = _mm256_set1_pd(c1);
    const __m256d c2v = _mm256_set1_pd(c2);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(rp + 2 * i);
        const __m256d s = _mm256_mul_pd(v, v);
        const __m256d sq = _mm256_hadd_pd(s, s);  // |z|^2 duplicated per lane pair
        const __m256d m = _mm256_sqrt_pd(sq);
        const __m256d pos = _mm256_cmp_pd(m, zero, _CMP_GT_OQ);
        const __m256d t = _mm256_add_pd(_mm256_div_pd(c1v, m), c2v);
        const __m256d tt = _mm256_blendv_pd(c2v, t, pos);
        _mm256_storeu_pd(op + 2 * i, _mm256_mul_pd(v, tt));
    }
    if (i < n) scalar_ops().sign_combine_cplx(n - i, r + i, c1, c2, out + i);
}

void sign_combine_real_avx2(std::size_t n, const double* r, double c1, double c2, double* out) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d mone = _mm256_set1_pd(-1.0);
    const __m256d c1v = _mm256_set1_pd(c1);
    const __m256d c2v = _mm256_set1_pd(c2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(r + i);
        const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_GT_OQ), one);
        const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_LT_OQ), mone);
        const __m256d sgn = _mm256_add_pd(pos, neg);
        const __m256d res = _mm256_add_pd(_mm256_mul_pd(c1v, sgn), _mm256_mul_pd(c2v, v));
        _mm256_storeu_pd(out + i, res);
    }
    if (i < n) scalar_ops().sign_combine_real(n - i, r + i, c1, c2, out + i);
}

void nadam_step_avx2(std::size_t n, const NadamCoeffs& c, const double* g, double* m, double* v,
                     double* p) {
    const __m256d b1 = _mm256_set1_pd(c.beta1);
    const __m256d b2 = _mm256_set1_pd(c.beta2);
    const __m256d omb1 = _mm256_set1_pd(c.one_m_beta1);
    const __m256d omb2 = _mm256_set1_pd(c.one_m_beta2);
    const __m256d mm = _mm256_set1_pd(c.mhat_m);
    const __m256d mg = _mm256_set1_pd(c.mhat_g);
    const __m256d vinv = _mm256_set1_pd(c.v_inv);
    const __m256d lr = _mm256_set1_pd(c.lr);
    const __m256d eps = _mm256_set1_pd(c.eps);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_loadu_pd(m + i);
        __m256d vv = _mm256_loadu_pd(v + i);
        mv = _mm256_fmadd_pd(b1, mv, _mm256_mul_pd(omb1, gv));
        const __m256d gg = _mm256_mul_pd(gv, gv);
        vv = _mm256_fmadd_pd(b2, vv, _mm256_mul_pd(omb2, gg));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        const __m256d num = _mm256_fmadd_pd(mm, mv, _mm256_mul_pd(mg, gv));
        const __m256d den = _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vv, vinv)), eps);
        const __m256d pv = _mm256_loadu_pd(p + i);
        _mm256_storeu_pd(p + i, _mm256_sub_pd(pv, _mm256_div_pd(_mm256_mul_pd(lr, num), den)));
    }
    if (i < n) scalar_ops().nadam_step(n - i, c, g + i, m + i, v + i, p + i);
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops table{
        "avx2",
        axpy_cplx_avx2,
        axpy_real_avx2,
        axpy_cols_cplx_avx2,
        axpy_cols_real_avx2,
        norms_cplx_avx2,
        norms_real_avx2,
        sign_combine_cplx_avx2,
        sign_combine_real_avx2,
        nadam_step_avx2,
    };
    return table;
}

#else  // !STRID_KERNELS_X86

const Ops& avx2_ops() { return scalar_ops(); }

#endif

}  // namespace strid::kernels
