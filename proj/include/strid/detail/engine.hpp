#pragma once

// Internal objective/gradient engine shared by the public objective functions
// and the optimizer. Templated over the scalar field: complex for frequency
// data, double for purely real (e.g. parametric) data.

#include <cmath>
#include <future>

#include "strid/constraints.hpp"
#include "strid/errors.hpp"
#include "strid/kernels.hpp"
#include "strid/spectral.hpp"
#include "strid/types.hpp"

namespace strid::detail {

enum class SpectralRoute {
    gram,  // eigendecomposition of the stack Gram matrices (optimizer hot path)
    svd    // exact thin SVD of the materialized stacks
};

template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<cplx> {
    using Mat = CMat;
    using Vec = CVec;
    static cplx conj(cplx z) { return std::conj(z); }
    static void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
        kernels::active_ops().axpy_cplx(n, a, x, y);
    }
    static void axpy_cols(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
                          cplx* y) {
        kernels::active_ops().axpy_cols_cplx(rows, cols, a, x, y);
    }
    static void norms(std::size_t n, const cplx* z, double* l1, double* l2sq) {
        kernels::active_ops().norms_cplx(n, z, l1, l2sq);
    }
    static void sign_combine(std::size_t n, const cplx* r, double c1, double c2, cplx* out) {
        kernels::active_ops().sign_combine_cplx(n, r, c1, c2, out);
    }
    static constexpr Index reals_per_scalar = 2;
};

template <>
struct ScalarOps<double> {
    using Mat = RMat;
    using Vec = RVec;
    static double conj(double z) { return z; }
    static void axpy(std::size_t n, double a, const double* x, double* y) {
        kernels::active_ops().axpy_real(n, a, x, y);
    }
    static void axpy_cols(std::size_t rows, std::size_t cols, const double* a, const double* x,
                          double* y) {
        kernels::active_ops().axpy_cols_real(rows, cols, a, x, y);
    }
    static void norms(std::size_t n, const double* z, double* l1, double* l2sq) {
        kernels::active_ops().norms_real(n, z, l1, l2sq);
    }
    static void sign_combine(std::size_t n, const double* r, double c1, double c2, double* out) {
        kernels::active_ops().sign_combine_real(n, r, c1, c2, out);
    }
    static constexpr Index reals_per_scalar = 1;
};

/// Constraint data lowered to one scalar field.
template <class Scalar>
struct Problem {
    using Mat = typename ScalarOps<Scalar>::Mat;
    using Vec = typename ScalarOps<Scalar>::Vec;
    std::vector<Vec> lambdas;
    Mat rhs_right;
    Mat rhs_left;
    bool symmetric = false;
    Index n = 0;
    Index q = 0;
};

inline Problem<cplx> make_problem(const ConstraintSystem& sys) {
    Problem<cplx> pb;
    pb.lambdas = sys.lambdas;
    pb.rhs_right = sys.rhs_right;
    pb.rhs_left = sys.rhs_left;
    pb.symmetric = sys.symmetric;
    pb.n = sys.n();
    pb.q = sys.q();
    return pb;
}

/// Requires sys.all_real().
inline Problem<double> make_real_problem(const ConstraintSystem& sys) {
    Problem<double> pb;
    for (const auto& lam : sys.lambdas) pb.lambdas.push_back(lam.real());
    pb.rhs_right = sys.rhs_right.real();
    pb.rhs_left = sys.rhs_left.real();
    pb.symmetric = sys.symmetric;
    pb.n = sys.n();
    pb.q = sys.q();
    return pb;
}

struct Breakdown {
    double residual_l1 = 0.0;
    double residual_l2sq = 0.0;
    double wnn = 0.0;  // sum of the weighted nuclear norms of the included stacks

    double value(double lambda, const ResidualNormOpts& opts) const {
        return lambda * wnn + opts.l1_weight * residual_l1 + opts.l2_weight * residual_l2sq;
    }
    double residual_l2norm() const { return std::sqrt(residual_l2sq); }
};

// Relative floor below which a Gram-route singular value is treated as zero
// in the gradient; squaring makes anything below ~sqrt(eps)*s1 meaningless.
inline constexpr double kGramSigmaFloor = 1e-7;
inline constexpr double kSvdSigmaFloor = 1e-13;

/// Spectrum and (optionally) gradient factor of one stack via its Gram
/// matrix. For the horizontal stack pass blocks A_i and 'horizontal = true'
/// (Gram = sum A_i A_i^H, gradient factor M with dJ/dA_i = M A_i); for the
/// vertical stack pass 'horizontal = false' (Gram = sum A_i^H A_i,
/// dJ/dA_i = A_i M).
template <class Scalar>
void stack_gram_spectrum(const typename ScalarOps<Scalar>::Mat& stack, Index n, Index q,
                         bool horizontal, const RVec& w, RVec& sigma,
                         typename ScalarOps<Scalar>::Mat* factor) {
    using Mat = typename ScalarOps<Scalar>::Mat;
    Mat G = Mat::Zero(n, n);
    for (Index i = 0; i < q; ++i) {
        const auto block = stack.middleCols(i * n, n);
        if (horizontal)
            G.template selfadjointView<Eigen::Lower>().rankUpdate(block);
        else
            G.template selfadjointView<Eigen::Lower>().rankUpdate(block.adjoint());
    }
    G = G.template selfadjointView<Eigen::Lower>();

    Mat U;
    RVec evals;
    hermitian_eig_desc(G, U, evals);
    sigma = evals.cwiseMax(0.0).cwiseSqrt();

    if (factor) {
        const double floor = kGramSigmaFloor * (sigma.size() ? sigma[0] : 0.0);
        RVec f(sigma.size());
        for (Index j = 0; j < sigma.size(); ++j)
            f[j] = sigma[j] > floor && floor > 0.0 ? w[j] / sigma[j] : 0.0;
        factor->noalias() = U * f.asDiagonal() * U.adjoint();
    }
}

template <class Scalar>
Breakdown objective_and_gradient(const Problem<Scalar>& pb,
                                 const typename ScalarOps<Scalar>::Mat& vars, double lambda,
                                 const RVec& w, const ResidualNormOpts& opts, SpectralRoute route,
                                 typename ScalarOps<Scalar>::Mat* grad) {
    using Ops = ScalarOps<Scalar>;
    using Mat = typename Ops::Mat;
    using Vec = typename Ops::Vec;
    const Index n = pb.n, q = pb.q;
    if (vars.rows() != n || vars.cols() != q * n)
        throw DimensionMismatch("variable stack must be N x qN");
    if (lambda != 0.0 && w.size() < n) throw InvalidArgument("weight vector too short");

    const std::size_t nn = static_cast<std::size_t>(n);
    Breakdown parts;

    // Realize A_i = K_i + K_i^T in the symmetric parametrization.
    Mat realized;
    if (pb.symmetric) {
        realized.resize(n, q * n);
        for (Index i = 0; i < q; ++i) {
            const auto Ki = vars.middleCols(i * n, n);
            realized.middleCols(i * n, n) = Ki + Ki.transpose();
        }
    }
    const Mat& A = pb.symmetric ? realized : vars;

    Mat grad_a;  // gradient with respect to A (folded to K at the end)
    Mat* gacc = nullptr;
    if (grad) {
        grad_a.setZero(n, q * n);
        gacc = &grad_a;
    }

    // Residual terms.
    Mat r1 = -pb.rhs_right;
    for (Index i = 0; i < q; ++i)
        Ops::axpy_cols(nn, nn, pb.lambdas[i].data(), A.middleCols(i * n, n).data(), r1.data());
    Ops::norms(static_cast<std::size_t>(r1.size()), r1.data(), &parts.residual_l1,
               &parts.residual_l2sq);

    Mat p1;
    if (gacc) {
        p1.resize(n, n);
        Ops::sign_combine(static_cast<std::size_t>(r1.size()), r1.data(), opts.l1_weight,
                          2.0 * opts.l2_weight, p1.data());
        for (Index i = 0; i < q; ++i) {
            const Vec lamc = pb.lambdas[i].conjugate();
            Ops::axpy_cols(nn, nn, lamc.data(), p1.data(), gacc->middleCols(i * n, n).data());
        }
    }

    if (!pb.symmetric) {
        Mat r2 = -pb.rhs_left;
        Mat at(n, n);
        for (Index i = 0; i < q; ++i) {
            at = A.middleCols(i * n, n).transpose();
            Ops::axpy_cols(nn, nn, pb.lambdas[i].data(), at.data(), r2.data());
        }
        Ops::norms(static_cast<std::size_t>(r2.size()), r2.data(), &parts.residual_l1,
                   &parts.residual_l2sq);
        if (gacc) {
            Mat p2(n, n);
            Ops::sign_combine(static_cast<std::size_t>(r2.size()), r2.data(), opts.l1_weight,
                              2.0 * opts.l2_weight, p2.data());
            Mat qmat(n, n);
            for (Index i = 0; i < q; ++i) {
                const Vec lamc = pb.lambdas[i].conjugate();
                qmat.setZero();
                Ops::axpy_cols(nn, nn, lamc.data(), p2.data(), qmat.data());
                gacc->middleCols(i * n, n) += qmat.transpose();
            }
        }
    }

    // Weighted nuclear norm terms.
    if (lambda != 0.0) {
        const bool both_stacks = !pb.symmetric;
        const bool parallel = both_stacks && n >= 32;

        auto vertical_part = [&]() {
            std::pair<double, Mat> out{0.0, Mat()};
            RVec sigma;
            if (route == SpectralRoute::gram) {
                Mat factor;
                stack_gram_spectrum<Scalar>(A, n, q, false, w, sigma, gacc ? &factor : nullptr);
                out.first = w.head(n).dot(sigma);
                if (gacc) {
                    out.second.resize(n, q * n);
                    for (Index i = 0; i < q; ++i)
                        out.second.middleCols(i * n, n).noalias() =
                            lambda * (A.middleCols(i * n, n) * factor);
                }
            } else {
                Mat tv(q * n, n);
                for (Index i = 0; i < q; ++i) tv.middleRows(i * n, n) = A.middleCols(i * n, n);
                auto svd = thin_svd(tv);
                sigma = svd.S;
                out.first = w.head(n).dot(sigma);
                if (gacc) {
                    const double floor = kSvdSigmaFloor * (sigma.size() ? sigma[0] : 0.0);
                    RVec wt = w.head(n);
                    for (Index j = 0; j < n; ++j)
                        if (sigma[j] <= floor) wt[j] = 0.0;
                    Mat g = svd.U * wt.asDiagonal() * svd.V.adjoint();
                    out.second.resize(n, q * n);
                    for (Index i = 0; i < q; ++i)
                        out.second.middleCols(i * n, n) = lambda * g.middleRows(i * n, n);
                }
            }
            return out;
        };

        std::future<std::pair<double, Mat>> vfuture;
        std::pair<double, Mat> vpart;
        if (both_stacks) {
            if (parallel)
                vfuture = std::async(std::launch::async, vertical_part);
            else
                vpart = vertical_part();
        }

        RVec sigma_h;
        if (route == SpectralRoute::gram) {
            Mat factor;
            stack_gram_spectrum<Scalar>(A, n, q, true, w, sigma_h, gacc ? &factor : nullptr);
            parts.wnn += w.head(n).dot(sigma_h);
            if (gacc) gacc->noalias() += lambda * (factor * A);
        } else {
            auto svd = thin_svd(A);
            sigma_h = svd.S;
            parts.wnn += w.head(n).dot(sigma_h);
            if (gacc) {
                const double floor = kSvdSigmaFloor * (sigma_h.size() ? sigma_h[0] : 0.0);
                RVec wt = w.head(n);
                for (Index j = 0; j < n; ++j)
                    if (sigma_h[j] <= floor) wt[j] = 0.0;
                gacc->noalias() += lambda * (svd.U * wt.asDiagonal() * svd.V.adjoint());
            }
        }

        if (both_stacks) {
            if (parallel) vpart = vfuture.get();
            parts.wnn += vpart.first;
            if (gacc) *gacc += vpart.second;
        }
    }

    if (grad) {
        if (pb.symmetric) {
            grad->resize(n, q * n);
            for (Index i = 0; i < q; ++i) {
                const auto gi = grad_a.middleCols(i * n, n);
                grad->middleCols(i * n, n) = gi + gi.transpose();
            }
        } else {
            *grad = std::move(grad_a);
        }
    }

    if (!std::isfinite(parts.residual_l1) || !std::isfinite(parts.residual_l2sq))
        throw NumericalFailure("non-finite residual norm term");
    if (!std::isfinite(parts.wnn)) throw NumericalFailure("non-finite weighted nuclear norm term");
    return parts;
}

/// Stack and block helpers.
template <class MatT>
MatT hstack_blocks(const std::vector<MatT>& blocks) {
    const Index n = blocks.front().rows();
    const Index q = static_cast<Index>(blocks.size());
    MatT stack(n, q * n);
    for (Index i = 0; i < q; ++i) stack.middleCols(i * n, n) = blocks[i];
    return stack;
}

template <class MatT>
std::vector<MatT> split_blocks(const MatT& stack, Index q) {
    const Index n = stack.rows();
    std::vector<MatT> blocks;
    blocks.reserve(q);
    for (Index i = 0; i < q; ++i) blocks.push_back(stack.middleCols(i * n, n));
    return blocks;
}

}  // namespace strid::detail
