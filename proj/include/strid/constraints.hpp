#pragma once

#include <utility>
#include <vector>

#include "strid/alpha.hpp"
#include "strid/samples.hpp"
#include "strid/types.hpp"

namespace strid {

/// Assembled interpolation constraints: the diagonals Lambda_i, the two
/// right-hand sides, and the data blocks used when projecting models. This is
/// everything the optimizer touches.
struct ConstraintSystem {
    std::vector<CVec> lambdas;  // q diagonals, entry j of lambdas[i] = alpha_i(sigma_j)
    CMat rhs_right;             // N x N
    CMat rhs_left;              // N x N
    CMat h_b;                   // N x m  (B-side data block: row j = H_j in SISO, c_j^T H_j tangential)
    CMat h_c;                   // l x N  (C-side data block: col j = H_j in SISO, H_j b_j tangential)
    bool symmetric = false;
    bool mimo = false;
    std::vector<Index> conj_perm;  // conjugate pairing of samples; empty unless conjugate-closed

    Index n() const { return rhs_right.rows(); }
    Index q() const { return static_cast<Index>(lambdas.size()); }
    CMat lambda_matrix(Index i) const { return CMat(lambdas.at(i).asDiagonal()); }
    bool all_real() const;
};

/// Diagonals Lambda_i = diag(alpha_i(sigma_1), ..., alpha_i(sigma_N)).
/// Evaluation failures are rethrown with the offending point index attached.
std::vector<CVec> assemble_lambdas(const std::vector<AlphaFunction>& alphas,
                                   const std::vector<EvalPoint>& points);

/// Builds the full constraint system from a sample set. MIMO data (l > 1 or
/// m > 1) requires both tangential direction lists.
ConstraintSystem assemble_constraints(const SampleSet& samples,
                                      const std::vector<AlphaFunction>& alphas,
                                      bool symmetric = false);

/// Residuals R1 = sum_i A_i Lambda_i - rhs_right and
/// R2 = sum_i A_i^T Lambda_i - rhs_left. In symmetric systems R2 aliases R1
/// (single constraint, computed once).
std::pair<CMat, CMat> residuals(const ConstraintSystem& system, const MatList& A);

/// K_i -> K_i + K_i^T; outputs are symmetric by construction.
MatList symmetrize(const MatList& K);

/// Frobenius norms of the two q = 2 consistency residuals that every solution
/// of the interpolation constraints must satisfy. Diagnostic only. Note: the
/// second equation is used with the right-hand side sign that actually
/// follows from the constraints (see README).
std::pair<double, double> q2_consistency(const ConstraintSystem& system, const CMat& A1,
                                         const CMat& A2);

/// Combined residual magnitude |vec(R)|_1 + |vec(R)|_2^2 used by the
/// objective; the two term weights exist for testing and default to 1.
struct ResidualNormOpts {
    double l1_weight = 1.0;
    double l2_weight = 1.0;
};
double residual_norm(const CMat& R, const ResidualNormOpts& opts = {});
double residual_norm(const RMat& R, const ResidualNormOpts& opts = {});

}  // namespace strid
