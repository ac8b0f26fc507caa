#pragma once

#include <optional>
#include <vector>

#include "strid/constraints.hpp"
#include "strid/types.hpp"

namespace strid {

enum class SolveMode { benchmark, eq_weights, reweighted };

const char* to_string(SolveMode mode);
SolveMode solve_mode_from_string(const std::string& name);

/// Hyperparameters of the first-order solver and the reweighting driver.
/// benchmark mode forces lambda0 = 0 and no reweighting; eq_weights keeps the
/// regularizer but never updates the weights.
struct SolverConfig {
    SolveMode mode = SolveMode::reweighted;
    double lambda0 = 5e-3;
    double lr0 = 5e-3;
    long inner_iters = 50000;
    long lr_drop_every = 12500;
    double lr_drop_factor = 5.0;
    int outer_iters = -1;  // -1: mode default (4 for reweighted, 0 otherwise)
    double epsilon = 1e-12;
    double max_val = 1e4;
    unsigned long long seed = 0;
    double init_scale = 1e-2;
    /// Optional explicit regularization schedule lambda^(0..outer); when
    /// absent, lambda^(i) = lambda0 / i.
    std::optional<std::vector<double>> lambda_schedule;

    void validate() const;
    /// Applies the mode invariants and resolves outer_iters; the result is
    /// what the solver actually runs with.
    SolverConfig normalized() const;
    int resolved_outer_iters() const;
    double resolved_lambda0() const;
};

struct TraceRow {
    long step;
    double objective;
    double residual_l2;
    double wnn_term;
};

/// Result of a solve: the variable matrices (A_i, or K_i when symmetric),
/// the final weight vector, and the objective trace (recorded every 100
/// steps, cumulative across reweighting stages).
struct SolveState {
    MatList A;
    RVec weights;
    int outer_index = 0;
    std::vector<TraceRow> trace;
    bool symmetric = false;

    /// A_i as used by the model: identity in plain mode, K_i + K_i^T in
    /// symmetric mode.
    MatList realized() const;
    std::vector<double> objective_trace() const;
};

/// The seeded Gaussian initialization used by optimize. Real-lane systems
/// draw real entries; conjugate-closed systems get an initialization that is
/// invariant under the data's conjugation symmetry.
MatList seeded_initialization(const ConstraintSystem& system, const SolverConfig& config);

/// Runs inner_iters Nesterov-accelerated adaptive-moment steps (moment decays
/// 0.9/0.999, offset 1e-8) with the step-drop learning-rate schedule, from
/// the seeded initialization, with unit weights. Throws NumericalFailure when
/// the objective exceeds 1e6 times its initial value.
SolveState optimize(const ConstraintSystem& system, const SolverConfig& config);

/// Full iterative reweighting driver: solve with unit weights, then
/// outer_iters times recompute the singular values of the horizontal stack,
/// update the weights, and re-optimize from the previous solution with
/// lambda^(i) = lambda0 / i and the initial learning rate halved per stage.
SolveState solve_rsmi(const ConstraintSystem& system, const SolverConfig& config);

/// Trace sanity: every recording stays within the worst of the preceding
/// window plus tol times the progress made so far (so floor-level
/// oscillation is tolerated, macroscopic rebound is not).
bool trace_is_nonincreasing(const std::vector<double>& values, int window = 5, double tol = 0.05);

}  // namespace strid
