#include "strid/constraints.hpp"

#include <string>

#include "strid/errors.hpp"
#include "strid/kernels.hpp"

namespace strid {

bool ConstraintSystem::all_real() const {
    for (const auto& lam : lambdas)
        if (lam.imag().norm() != 0.0) return false;
    return rhs_right.imag().norm() == 0.0 && rhs_left.imag().norm() == 0.0 &&
           h_b.imag().norm() == 0.0 && h_c.imag().norm() == 0.0;
}

std::vector<CVec> assemble_lambdas(const std::vector<AlphaFunction>& alphas,
                                   const std::vector<EvalPoint>& points) {
    std::vector<CVec> lambdas;
    lambdas.reserve(alphas.size());
    const Index n = static_cast<Index>(points.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        CVec diag(n);
        for (Index j = 0; j < n; ++j) {
            try {
                diag[j] = eval_alpha(alphas[i], points[j]);
            } catch (const Error& e) {
                throw IncompatibleEvalPoint("alpha_" + std::to_string(i + 1) + " at point " +
                                            std::to_string(j + 1) + ": " + e.what());
            }
        }
        lambdas.push_back(std::move(diag));
    }
    return lambdas;
}

ConstraintSystem assemble_constraints(const SampleSet& samples,
                                      const std::vector<AlphaFunction>& alphas, bool symmetric) {
    samples.validate();
    const Index n = samples.size();
    const Index l = samples.outputs(), m = samples.inputs();

    ConstraintSystem sys;
    sys.lambdas = assemble_lambdas(alphas, samples.points);
    sys.symmetric = symmetric;
    sys.mimo = samples.has_directions();

    if (!sys.mimo) {
        if (l != 1 || m != 1)
            throw InvalidArgument(
                "tangential directions are required for data with more than one input or output");
        CVec h(n);
        for (Index j = 0; j < n; ++j) h[j] = samples.responses[j](0, 0);
        sys.rhs_right = h * CVec::Ones(n).transpose();
        sys.rhs_left = sys.rhs_right;
        sys.h_b = h;
        sys.h_c = h.transpose();
    } else {
        const auto& bs = *samples.right_dirs;
        const auto& cs = *samples.left_dirs;
        CMat pc(n, m);  // row j = c_j^T H_j
        CMat pb(n, l);  // row j = (H_j b_j)^T
        CMat bmat(m, n), cmat(l, n);
        for (Index j = 0; j < n; ++j) {
            pc.row(j) = cs[j].transpose() * samples.responses[j];
            pb.row(j) = (samples.responses[j] * bs[j]).transpose();
            bmat.col(j) = bs[j];
            cmat.col(j) = cs[j];
        }
        sys.rhs_right = pc * bmat;
        sys.rhs_left = pb * cmat;
        sys.h_b = pc;
        sys.h_c = pb.transpose();
    }

    if (samples.conjugate_closed) sys.conj_perm = samples.conjugate_permutation();
    return sys;
}

std::pair<CMat, CMat> residuals(const ConstraintSystem& system, const MatList& A) {
    const Index n = system.n();
    if (static_cast<Index>(A.size()) != system.q())
        throw DimensionMismatch("expected " + std::to_string(system.q()) + " matrices");
    for (const auto& Ai : A)
        if (Ai.rows() != n || Ai.cols() != n)
            throw DimensionMismatch("constraint matrices must be N x N with N = " +
                                    std::to_string(n));

    const auto& ops = kernels::active_ops();
    const std::size_t nn = static_cast<std::size_t>(n);
    CMat r1 = -system.rhs_right;
    for (std::size_t i = 0; i < A.size(); ++i)
        ops.axpy_cols_cplx(nn, nn, system.lambdas[i].data(), A[i].data(), r1.data());
    if (system.symmetric) return {r1, r1};

    CMat r2 = -system.rhs_left;
    for (std::size_t i = 0; i < A.size(); ++i) {
        const CMat At = A[i].transpose();
        ops.axpy_cols_cplx(nn, nn, system.lambdas[i].data(), At.data(), r2.data());
    }
    return {r1, r2};
}

MatList symmetrize(const MatList& K) {
    MatList out;
    out.reserve(K.size());
    for (const auto& Ki : K) {
        if (Ki.rows() != Ki.cols()) throw DimensionMismatch("symmetrize needs square matrices");
        out.push_back(Ki + Ki.transpose());
    }
    return out;
}

std::pair<double, double> q2_consistency(const ConstraintSystem& system, const CMat& A1,
                                         const CMat& A2) {
    if (system.q() != 2) throw InvalidArgument("q2 consistency check needs exactly q = 2");
    const CVec& l1 = system.lambdas[0];
    const CVec& l2 = system.lambdas[1];
    const CMat flt = system.rhs_left.transpose();

    // Lambda_a X Lambda_b has entries lam_a[j] X(j,k) lam_b[k]; expressed via
    // the outer-product mask below.
    const CMat mask = l2 * l1.transpose() - l1 * l2.transpose();
    const CMat e1 = mask.cwiseProduct(A1) -
                    (l2.asDiagonal() * system.rhs_right - flt * l2.asDiagonal());
    const CMat e2 = mask.cwiseProduct(A2) -
                    (flt * l1.asDiagonal() - l1.asDiagonal() * system.rhs_right);
    return {e1.norm(), e2.norm()};
}

double residual_norm(const CMat& R, const ResidualNormOpts& opts) {
    double l1 = 0.0, l2sq = 0.0;
    kernels::active_ops().norms_cplx(static_cast<std::size_t>(R.size()), R.data(), &l1, &l2sq);
    return opts.l1_weight * l1 + opts.l2_weight * l2sq;
}

double residual_norm(const RMat& R, const ResidualNormOpts& opts) {
    double l1 = 0.0, l2sq = 0.0;
    kernels::active_ops().norms_real(static_cast<std::size_t>(R.size()), R.data(), &l1, &l2sq);
    return opts.l1_weight * l1 + opts.l2_weight * l2sq;
}

}  // namespace strid
