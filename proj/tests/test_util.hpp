#pragma once

// Shared helpers for the test suites: seeded random data, finite-difference
// oracles, and small structured systems.

#include <random>

#include "strid/benchmarks.hpp"
#include "strid/constraints.hpp"
#include "strid/model.hpp"
#include "strid/types.hpp"

namespace strid::testing {

inline CMat random_cmat(Index rows, Index cols, unsigned seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) M(i, j) = scale * cplx(g(rng), g(rng));
    return M;
}

inline RMat random_rmat(Index rows, Index cols, unsigned seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    RMat M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) M(i, j) = scale * g(rng);
    return M;
}

inline RVec random_rvec(Index n, unsigned seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    RVec v(n);
    for (Index i = 0; i < n; ++i) v[i] = u(rng);
    return v;
}

inline CVec random_unit_cvec(Index n, unsigned seed) {
    CMat v = random_cmat(n, 1, seed);
    return CVec(v.col(0) / v.col(0).norm());
}

/// Central finite differences of a real function over the real and imaginary
/// parts of a list of complex matrices.
template <class F>
MatList fd_gradient(const F& f, const MatList& at, double h) {
    MatList grad;
    for (std::size_t i = 0; i < at.size(); ++i)
        grad.push_back(CMat::Zero(at[i].rows(), at[i].cols()));
    MatList work = at;
    for (std::size_t i = 0; i < at.size(); ++i) {
        for (Index c = 0; c < at[i].cols(); ++c)
            for (Index r = 0; r < at[i].rows(); ++r) {
                const cplx orig = work[i](r, c);
                work[i](r, c) = orig + h;
                const double fp = f(work);
                work[i](r, c) = orig - h;
                const double fm = f(work);
                work[i](r, c) = orig + cplx(0, h);
                const double fip = f(work);
                work[i](r, c) = orig - cplx(0, h);
                const double fim = f(work);
                work[i](r, c) = orig;
                grad[i](r, c) = cplx((fp - fm) / (2 * h), (fip - fim) / (2 * h));
            }
    }
    return grad;
}

/// Random stable structured system of order n with q in {2, 3}:
/// q = 2 gives alpha = (s, 1), q = 3 adds a delay term with a small matrix.
inline GroundTruth random_structured_system(int n, int q, unsigned seed, Index l = 1,
                                            Index m = 1) {
    StructuredModel sys;
    sys.alphas = {AlphaFunction::monomial(1), AlphaFunction::constant()};
    CMat stable = random_cmat(n, n, seed).real().cast<cplx>();
    stable = 0.5 * (stable + stable.transpose()).eval();
    stable += (stable.cwiseAbs().rowwise().sum().maxCoeff() + 1.0) * CMat::Identity(n, n);
    sys.A = {CMat::Identity(n, n), stable};
    if (q == 3) {
        sys.alphas.push_back(AlphaFunction::exp_delay(0.7));
        sys.A.push_back(0.1 * random_cmat(n, n, seed + 1).real().cast<cplx>());
    }
    sys.B = random_cmat(n, m, seed + 2).real().cast<cplx>();
    sys.C = random_cmat(l, n, seed + 3).real().cast<cplx>();

    GroundTruth gt;
    gt.model = std::move(sys);
    gt.description = "random structured test system";
    gt.default_lo = 0.1;
    gt.default_hi = 10.0;
    gt.default_train = 5;
    return gt;
}

}  // namespace strid::testing
