#pragma once

#include "strid/types.hpp"

namespace strid {

/// Thin SVD T = U diag(S) V^H with S descending. Columns carry a
/// deterministic phase convention: the first nonzero entry of each left
/// singular vector is made real and positive.
struct SvdResult {
    CMat U;
    RVec S;
    CMat V;
};
SvdResult thin_svd(const CMat& T);

struct RealSvdResult {
    RMat U;
    RVec S;
    RMat V;
};
RealSvdResult thin_svd(const RMat& T);

/// Singular values only, descending.
RVec singular_values(const CMat& T);
RVec singular_values(const RMat& T);

/// sum_i w_i gamma_i with gamma the singular values in descending order.
/// Requires length(w) >= min(rows, cols) and elementwise nonnegative w.
double weighted_nuclear_norm(const CMat& T, const RVec& w);

/// (Sub)gradient U diag(w) V^H from the thin SVD; at inputs with distinct
/// nonzero singular values this is the derivative of the weighted nuclear
/// norm, and a valid subgradient element otherwise.
CMat wnn_gradient(const CMat& T, const RVec& w);

/// w_j = min(max_val, 1 / (s_j + epsilon)) elementwise. Inputs must be
/// nonnegative.
RVec update_weights(const RVec& singular_values, double epsilon, double max_val);

namespace detail {

/// Eigendecomposition of a Hermitian (resp. symmetric) matrix with
/// eigenvalues sorted descending. G is destroyed conceptually (copied in).
void hermitian_eig_desc(const CMat& G, CMat& U, RVec& evals);
void hermitian_eig_desc(const RMat& G, RMat& U, RVec& evals);

}  // namespace detail

}  // namespace strid
