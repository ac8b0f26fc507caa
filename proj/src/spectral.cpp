#include "strid/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "strid/errors.hpp"

namespace strid {

namespace {

// Phase convention: rotate each (u_j, v_j) pair so the first nonzero entry of
// u_j is real positive. Keeps U S V^H invariant and stabilizes reweighting.
template <class MatT>
void normalize_svd_signs(MatT& U, MatT& V) {
    using Scalar = typename MatT::Scalar;
    for (Index j = 0; j < U.cols(); ++j) {
        const double colmax = U.col(j).cwiseAbs().maxCoeff();
        if (colmax == 0.0) continue;
        Index lead = 0;
        while (lead < U.rows() && std::abs(U(lead, j)) <= 1e-12 * colmax) ++lead;
        if (lead == U.rows()) continue;
        const Scalar u = U(lead, j);
        const double mag = std::abs(u);
        // Multiplying both columns by the same unit rotation keeps U S V^H.
        const Scalar rot = Eigen::numext::conj(u) / mag;
        U.col(j) *= rot;
        if (j < V.cols()) V.col(j) *= rot;
    }
}

int gesdd(char jobz, Index m, Index n, CMat& a, RVec& s, CMat& u, CMat& vt) {
    return LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobz, static_cast<lapack_int>(m),
                          static_cast<lapack_int>(n), a.data(), static_cast<lapack_int>(m),
                          s.data(), u.data(), static_cast<lapack_int>(std::max<Index>(1, u.rows())),
                          vt.data(), static_cast<lapack_int>(std::max<Index>(1, vt.rows())));
}

int gesdd(char jobz, Index m, Index n, RMat& a, RVec& s, RMat& u, RMat& vt) {
    return LAPACKE_dgesdd(LAPACK_COL_MAJOR, jobz, static_cast<lapack_int>(m),
                          static_cast<lapack_int>(n), a.data(), static_cast<lapack_int>(m),
                          s.data(), u.data(), static_cast<lapack_int>(std::max<Index>(1, u.rows())),
                          vt.data(), static_cast<lapack_int>(std::max<Index>(1, vt.rows())));
}

template <class MatT>
void thin_svd_impl(const MatT& T, MatT& U, RVec& S, MatT& V) {
    const Index m = T.rows(), n = T.cols(), k = std::min(m, n);
    if (k == 0) throw InvalidArgument("SVD of an empty matrix");
    MatT a = T;
    S.resize(k);
    U.resize(m, k);
    MatT vt(k, n);
    int info = gesdd('S', m, n, a, S, U, vt);
    if (info != 0) throw NumericalFailure("SVD failed to converge (gesdd info " +
                                          std::to_string(info) + ")");
    V = vt.adjoint();
    normalize_svd_signs(U, V);
}

template <class MatT>
RVec singular_values_impl(const MatT& T) {
    const Index m = T.rows(), n = T.cols(), k = std::min(m, n);
    if (k == 0) throw InvalidArgument("SVD of an empty matrix");
    MatT a = T;
    RVec s(k);
    MatT u(1, 1), vt(1, 1);
    int info = gesdd('N', m, n, a, s, u, vt);
    if (info != 0) throw NumericalFailure("SVD failed to converge (gesdd info " +
                                          std::to_string(info) + ")");
    return s;
}

}  // namespace

SvdResult thin_svd(const CMat& T) {
    SvdResult r;
    thin_svd_impl(T, r.U, r.S, r.V);
    return r;
}

RealSvdResult thin_svd(const RMat& T) {
    RealSvdResult r;
    thin_svd_impl(T, r.U, r.S, r.V);
    return r;
}

RVec singular_values(const CMat& T) { return singular_values_impl(T); }
RVec singular_values(const RMat& T) { return singular_values_impl(T); }

namespace {

void check_weights(Index k, const RVec& w) {
    if (w.size() < k)
        throw InvalidArgument("weight vector too short: need at least " + std::to_string(k) +
                              " entries, got " + std::to_string(w.size()));
    if ((w.array() < 0.0).any()) throw InvalidArgument("weights must be nonnegative");
}

}  // namespace

double weighted_nuclear_norm(const CMat& T, const RVec& w) {
    const RVec s = singular_values(T);
    check_weights(s.size(), w);
    return w.head(s.size()).dot(s);
}

CMat wnn_gradient(const CMat& T, const RVec& w) {
    const Index k = std::min(T.rows(), T.cols());
    check_weights(k, w);
    const SvdResult svd = thin_svd(T);
    return svd.U * w.head(k).asDiagonal() * svd.V.adjoint();
}

RVec update_weights(const RVec& singular_values, double epsilon, double max_val) {
    if ((singular_values.array() < 0.0).any())
        throw InvalidArgument("singular values must be nonnegative");
    RVec w(singular_values.size());
    for (Index j = 0; j < w.size(); ++j)
        w[j] = std::min(max_val, 1.0 / (singular_values[j] + epsilon));
    return w;
}

namespace detail {

namespace {

int heevd(Index n, CMat& a, RVec& evals) {
    return LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), a.data(),
                          static_cast<lapack_int>(n), evals.data());
}

int heevd(Index n, RMat& a, RVec& evals) {
    return LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), a.data(),
                          static_cast<lapack_int>(n), evals.data());
}

template <class MatT>
void hermitian_eig_desc_impl(const MatT& G, MatT& U, RVec& evals) {
    const Index n = G.rows();
    U = G;
    evals.resize(n);
    int info = heevd(n, U, evals);
    if (info != 0)
        throw NumericalFailure("Hermitian eigendecomposition failed (info " +
                               std::to_string(info) + ")");
    // LAPACK returns ascending order; flip to descending.
    evals.reverseInPlace();
    U = U.rowwise().reverse().eval();
}

}  // namespace

void hermitian_eig_desc(const CMat& G, CMat& U, RVec& evals) {
    hermitian_eig_desc_impl(G, U, evals);
}

void hermitian_eig_desc(const RMat& G, RMat& U, RVec& evals) {
    hermitian_eig_desc_impl(G, U, evals);
}

}  // namespace detail

}  // namespace strid
