#pragma once

#include "strid/constraints.hpp"
#include "strid/types.hpp"

namespace strid {

/// Relaxed objective
///   J = lambda |[A_1..A_q]|_{w,*} + lambda |[A_1^T..A_q^T]^T|_{w,*}
///       + |R1| + |R2|
/// with |R| = |vec R|_1 + |vec R|_2^2. In symmetric systems the inputs are
/// the K_i of the parametrization A_i = K_i + K_i^T and the objective keeps a
/// single stack and a single residual term.
double objective(const ConstraintSystem& system, const MatList& A, double lambda, const RVec& w,
                 const ResidualNormOpts& opts = {});

/// Gradient of the objective with respect to each variable matrix (A_i, or
/// K_i in symmetric systems). Entries are indexed so that the real/imaginary
/// parts match central finite differences of the objective.
MatList objective_gradient(const ConstraintSystem& system, const MatList& A, double lambda,
                           const RVec& w, const ResidualNormOpts& opts = {});

}  // namespace strid
