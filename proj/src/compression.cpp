#include "strid/compression.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "strid/constraints.hpp"
#include "strid/detail/engine.hpp"
#include "strid/errors.hpp"
#include "strid/spectral.hpp"

namespace strid {

StackedSvds stacked_svds(const MatList& A) {
    if (A.empty()) throw InvalidArgument("need at least one matrix");
    const Index n = A.front().rows();
    const Index q = static_cast<Index>(A.size());
    for (const auto& Ai : A)
        if (Ai.rows() != n || Ai.cols() != n)
            throw DimensionMismatch("stacked SVDs need square blocks of equal dimension");

    const CMat th = detail::hstack_blocks(A);
    CMat tv(q * n, n);
    for (Index i = 0; i < q; ++i) tv.middleRows(i * n, n) = A[static_cast<std::size_t>(i)];

    StackedSvds out;
    auto h = thin_svd(th);
    out.U1 = std::move(h.U);
    out.S1 = std::move(h.S);
    out.V1 = std::move(h.V);
    auto v = thin_svd(tv);
    out.U2 = std::move(v.U);
    out.S2 = std::move(v.S);
    out.V2 = std::move(v.V);
    return out;
}

namespace {

// Residual energy 1 - sum_{i<=r} s_i / sum s, with an all-zero spectrum
// counting as fully captured.
double residual_energy(const RVec& s, int r) {
    const double total = s.sum();
    if (total <= 0.0) return 0.0;
    return 1.0 - s.head(r).sum() / total;
}

}  // namespace

int select_order(const RVec& S1, const RVec& S2, double tol) {
    if (S1.size() == 0 || S2.size() == 0) throw InvalidArgument("empty spectra");
    if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("tol must lie in (0, 1)");
    const int kmax = static_cast<int>(std::min(S1.size(), S2.size()));
    for (int r = 1; r <= kmax; ++r) {
        if (std::max(residual_energy(S1, r), residual_energy(S2, r)) <= tol) return r;
    }
    return kmax;
}

namespace {

std::pair<StructuredModel, CompressionReport> compress_impl(
    const MatList& A, const CMat& h_b, const CMat& h_c, const std::vector<AlphaFunction>& alphas,
    const OrderSpec& spec, bool symmetric) {
    const Index n = A.front().rows();
    const auto svds = stacked_svds(A);

    CompressionReport report;
    report.sv_horizontal = svds.S1;
    report.sv_vertical = svds.S2;

    int r = 0;
    if (spec.order) {
        r = *spec.order;
        report.tol_used = std::numeric_limits<double>::quiet_NaN();
        if (r < 1) throw InvalidArgument("order must be at least 1");
        if (r > n)
            throw InvalidArgument("order " + std::to_string(r) + " exceeds the sample count " +
                                  std::to_string(n));
    } else if (spec.tol) {
        r = select_order(svds.S1, svds.S2, *spec.tol);
        report.tol_used = *spec.tol;
    } else {
        throw InvalidArgument("either an explicit order or a tolerance is required");
    }
    report.selected_order = r;
    report.energy_h = 1.0 - residual_energy(svds.S1, r);
    report.energy_v = 1.0 - residual_energy(svds.S2, r);

    const CMat W = svds.U1.leftCols(r);
    const CMat V = symmetric ? CMat(W.conjugate()) : CMat(svds.V2.leftCols(r));

    StructuredModel model;
    model.alphas = alphas;
    model.symmetric = symmetric;
    model.A.reserve(A.size());
    for (const auto& Ai : A) {
        CMat At = W.adjoint() * Ai * V;
        if (symmetric) At = 0.5 * (At + At.transpose()).eval();  // remove rounding skew
        model.A.push_back(std::move(At));
    }
    model.B = W.adjoint() * h_b;
    model.C = h_c * V;
    model.validate();
    return {std::move(model), std::move(report)};
}

}  // namespace

std::pair<StructuredModel, CompressionReport> compress(const MatList& A, const SampleSet& samples,
                                                       const std::vector<AlphaFunction>& alphas,
                                                       const OrderSpec& spec, bool symmetric) {
    if (A.empty()) throw InvalidArgument("need at least one matrix");
    if (A.front().rows() != samples.size())
        throw DimensionMismatch("solution matrices must be N x N over the same samples");
    const auto sys = assemble_constraints(samples, alphas, symmetric);
    return compress_impl(A, sys.h_b, sys.h_c, alphas, spec, symmetric);
}

std::pair<StructuredModel, CompressionReport> compress_model(const StructuredModel& model,
                                                             const OrderSpec& spec) {
    return compress_impl(model.A, model.B, model.C, model.alphas, spec, model.symmetric);
}

int numerical_rank_rmin(const MatList& A, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidArgument("rel_tol must lie in (0, 1)");
    const auto svds = stacked_svds(A);
    auto count = [rel_tol](const RVec& s) {
        if (s.size() == 0 || s[0] <= 0.0) return 0;
        int c = 0;
        for (Index i = 0; i < s.size(); ++i)
            if (s[i] > rel_tol * s[0]) ++c;
        return c;
    };
    return std::min(count(svds.S1), count(svds.S2));
}

StructuredModel realify(const StructuredModel& model, const SampleSet& samples) {
    if (!samples.conjugate_closed)
        throw InvalidArgument("realification requires conjugate-closed samples");

    auto truncated = [](const StructuredModel& m) {
        StructuredModel out = m;
        for (auto& Ai : out.A) Ai = Ai.real().cast<cplx>();
        out.B = m.B.real().cast<cplx>();
        out.C = m.C.real().cast<cplx>();
        return out;
    };
    if (model.is_real(1e-12)) return truncated(model);

    const Index n = samples.size();
    if (model.order() != n)
        throw DimensionMismatch(
            "realification applies to sample-indexed solutions (model order must equal the "
            "sample count)");

    const auto perm = samples.conjugate_permutation(1e-10);
    for (Index j = 0; j < n; ++j)
        if (perm[perm[j]] != j)
            throw PairingError("conjugate pairing is not an involution (duplicate points?)");

    // Unitary pairing transform: fixed points keep their coordinate, each
    // conjugate pair maps to (sqrt2 Re, sqrt2 Im).
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CMat J = CMat::Zero(n, n);
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    for (Index j = 0; j < n; ++j) {
        if (visited[j]) continue;
        const Index k = perm[j];
        if (k == j) {
            J(j, j) = 1.0;
            visited[j] = true;
        } else {
            J(j, j) = inv_sqrt2;
            J(k, j) = inv_sqrt2;
            J(j, k) = cplx(0.0, inv_sqrt2);
            J(k, k) = cplx(0.0, -inv_sqrt2);
            visited[j] = visited[k] = true;
        }
    }

    StructuredModel out;
    out.alphas = model.alphas;
    out.symmetric = model.symmetric;
    out.A.reserve(model.A.size());
    double worst = 0.0;
    auto imag_ratio = [](const CMat& M) {
        const double denom = M.norm();
        return denom > 0 ? M.imag().norm() / denom : 0.0;
    };
    for (const auto& Ai : model.A) {
        CMat At = J.adjoint() * Ai * J;
        worst = std::max(worst, imag_ratio(At));
        out.A.push_back(std::move(At));
    }
    out.B = J.adjoint() * model.B;
    out.C = model.C * J;
    worst = std::max({worst, imag_ratio(out.B), imag_ratio(out.C)});
    if (worst > 1e-8)
        throw NumericalFailure(
            "realification left imaginary parts of relative size " + std::to_string(worst) +
            "; the solution does not carry the conjugation symmetry of the data");

    out = truncated(out);
    if (out.symmetric)
        for (auto& Ai : out.A) Ai = 0.5 * (Ai + Ai.transpose()).eval();
    return out;
}

}  // namespace strid
