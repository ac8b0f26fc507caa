#pragma once

#include <optional>
#include <utility>

#include "strid/model.hpp"
#include "strid/samples.hpp"
#include "strid/types.hpp"

namespace strid {

/// Thin SVDs of the horizontal stack [A_1, ..., A_q] (N x qN) and the
/// vertical stack [A_1; ...; A_q] (qN x N), singular values descending.
struct StackedSvds {
    CMat U1;
    RVec S1;
    CMat V1;
    CMat U2;
    RVec S2;
    CMat V2;
};
StackedSvds stacked_svds(const MatList& A);

/// Smallest r whose residual energy in both spectra is at most tol:
/// max{1 - sum_{i<=r} g1_i / sum g1, 1 - sum_{i<=r} g2_i / sum g2} <= tol.
int select_order(const RVec& S1, const RVec& S2, double tol);

struct CompressionReport {
    RVec sv_horizontal;
    RVec sv_vertical;
    int selected_order = 0;
    double tol_used = 0.0;  // NaN when an explicit order was requested
    double energy_h = 0.0;  // captured cumulative energy at r, in [0, 1]
    double energy_v = 0.0;
};

/// Either an explicit target order or an energy tolerance; an explicit order
/// wins when both are given.
struct OrderSpec {
    std::optional<int> order;
    std::optional<double> tol;
    static OrderSpec explicit_order(int r) { return {r, std::nullopt}; }
    static OrderSpec by_tol(double t) { return {std::nullopt, t}; }
};

/// Projects the order-N solution matrices onto the dominant r-dimensional
/// subspaces: W = U1^(r), V = V2^(r) (V = conj(W) for symmetric solutions),
/// A~_i = W^H A_i V, B~ = W^H H_B, C~ = H_C V with the data blocks taken from
/// the samples.
std::pair<StructuredModel, CompressionReport> compress(const MatList& A, const SampleSet& samples,
                                                       const std::vector<AlphaFunction>& alphas,
                                                       const OrderSpec& spec,
                                                       bool symmetric = false);

/// Same projection applied to a stored order-N interpolating model, whose B
/// and C already hold the data blocks.
std::pair<StructuredModel, CompressionReport> compress_model(const StructuredModel& model,
                                                             const OrderSpec& spec);

/// min over both stacks of #{gamma_i > rel_tol * gamma_1}.
int numerical_rank_rmin(const MatList& A, double rel_tol = 1e-8);

/// Turns a conjugate-structured complex model over conjugate-closed samples
/// into an equivalent real model via the unitary pairing transform; per
/// conjugate pair (z, conj z) -> (sqrt2 Re z, sqrt2 Im z). The model must be
/// sample-indexed (order == number of samples). Residual imaginary parts are
/// checked against 1e-8 * norm and truncated.
StructuredModel realify(const StructuredModel& model, const SampleSet& samples);

}  // namespace strid
