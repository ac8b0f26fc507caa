#include "strid/optimizer.hpp"

#include <cmath>
#include <random>
#include <string>

#include "strid/detail/engine.hpp"
#include "strid/errors.hpp"
#include "strid/spectral.hpp"

extern "C" void openblas_set_num_threads(int);

namespace strid {

const char* to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::benchmark: return "benchmark";
        case SolveMode::eq_weights: return "eq_weights";
        case SolveMode::reweighted: return "reweighted";
    }
    return "?";
}

SolveMode solve_mode_from_string(const std::string& name) {
    if (name == "benchmark") return SolveMode::benchmark;
    if (name == "eq_weights") return SolveMode::eq_weights;
    if (name == "reweighted") return SolveMode::reweighted;
    throw InvalidArgument("unknown mode '" + name + "' (benchmark|eq_weights|reweighted)");
}

void SolverConfig::validate() const {
    if (lambda0 < 0) throw InvalidArgument("lambda0 must be nonnegative");
    if (!(lr0 > 0)) throw InvalidArgument("lr0 must be positive");
    if (inner_iters < 0) throw InvalidArgument("inner_iters must be nonnegative");
    if (lr_drop_every <= 0) throw InvalidArgument("lr_drop_every must be positive");
    if (!(lr_drop_factor > 0)) throw InvalidArgument("lr_drop_factor must be positive");
    if (!(epsilon > 0)) throw InvalidArgument("epsilon must be positive");
    if (!(max_val > 0)) throw InvalidArgument("max_val must be positive");
    if (init_scale < 0) throw InvalidArgument("init_scale must be nonnegative");
    if (lambda_schedule && lambda_schedule->empty())
        throw InvalidArgument("lambda schedule must not be empty");
}

int SolverConfig::resolved_outer_iters() const {
    if (mode != SolveMode::reweighted) return 0;
    return outer_iters < 0 ? 4 : outer_iters;
}

double SolverConfig::resolved_lambda0() const {
    if (mode == SolveMode::benchmark) return 0.0;
    if (lambda_schedule) return lambda_schedule->front();
    return lambda0;
}

SolverConfig SolverConfig::normalized() const {
    validate();
    SolverConfig c = *this;
    c.outer_iters = resolved_outer_iters();
    c.lambda0 = resolved_lambda0();
    if (c.mode == SolveMode::benchmark) c.lambda_schedule.reset();
    return c;
}

MatList SolveState::realized() const { return symmetric ? symmetrize(A) : A; }

std::vector<double> SolveState::objective_trace() const {
    std::vector<double> v;
    v.reserve(trace.size());
    for (const auto& row : trace) v.push_back(row.objective);
    return v;
}

bool trace_is_nonincreasing(const std::vector<double>& values, int window, double tol) {
    if (values.empty()) return true;
    double best = values[0];
    for (std::size_t k = static_cast<std::size_t>(window); k < values.size(); ++k) {
        double worst = values[k - window];
        for (std::size_t j = k - window + 1; j < k; ++j) worst = std::max(worst, values[j]);
        for (std::size_t j = 0; j < k; ++j) best = std::min(best, values[j]);
        // Tolerance is relative to the progress made so far, so the
        // subgradient bounce at the convergence floor does not count as a
        // regression while any macroscopic rebound does.
        if (values[k] > worst + tol * (values[0] - best)) return false;
    }
    return true;
}

namespace {

using detail::Problem;
using detail::ScalarOps;
using detail::SpectralRoute;

// mu_t of the Nesterov momentum schedule (Dozat-style, decay 0.004).
double nadam_mu(long t) { return 0.9 * (1.0 - 0.5 * std::pow(0.96, 0.004 * double(t))); }

template <class Scalar>
typename ScalarOps<Scalar>::Mat draw_initialization(Index n, Index q,
                                                    unsigned long long seed, double scale) {
    using Mat = typename ScalarOps<Scalar>::Mat;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat stack(n, q * n);
    if constexpr (ScalarOps<Scalar>::reals_per_scalar == 2) {
        for (Index c = 0; c < stack.cols(); ++c)
            for (Index r = 0; r < stack.rows(); ++r) {
                const double re = scale * gauss(rng);
                const double im = scale * gauss(rng);
                stack(r, c) = cplx(re, im);
            }
    } else {
        for (Index c = 0; c < stack.cols(); ++c)
            for (Index r = 0; r < stack.rows(); ++r) stack(r, c) = scale * gauss(rng);
    }
    return stack;
}

// Projection onto the subspace invariant under the data's conjugation
// symmetry: A_i(j, k) = conj(A_i(perm(j), perm(k))). Solutions there realify
// exactly; the projection is applied to the initialization and periodically
// against rounding drift.
void project_conjugate_symmetry(CMat& stack, Index n, Index q, const std::vector<Index>& perm) {
    if (perm.empty()) return;
    CMat block(n, n);
    for (Index i = 0; i < q; ++i) {
        auto Ai = stack.middleCols(i * n, n);
        for (Index j = 0; j < n; ++j)
            for (Index k = 0; k < n; ++k) block(j, k) = std::conj(Ai(perm[j], perm[k]));
        Ai = 0.5 * (Ai + block);
    }
}

void project_conjugate_symmetry(RMat&, Index, Index, const std::vector<Index>&) {}

template <class Scalar>
void run_inner(const Problem<Scalar>& pb, typename ScalarOps<Scalar>::Mat& vars, double lambda,
               const RVec& w, double lr0, const SolverConfig& cfg, long step_offset,
               std::vector<TraceRow>& trace, const std::vector<Index>& conj_perm,
               SpectralRoute route) {
    using Mat = typename ScalarOps<Scalar>::Mat;
    const Index n = pb.n, q = pb.q;
    const std::size_t nflat =
        static_cast<std::size_t>(n * q * n) * ScalarOps<Scalar>::reals_per_scalar;

    RVec m = RVec::Zero(static_cast<Index>(nflat));
    RVec v = RVec::Zero(static_cast<Index>(nflat));
    const ResidualNormOpts opts;

    Mat grad(n, q * n);
    double initial_value = 0.0;
    double mu_prod = 1.0;
    double beta2_pow = 1.0;
    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

    for (long t = 1; t <= cfg.inner_iters; ++t) {
        const auto parts =
            detail::objective_and_gradient<Scalar>(pb, vars, lambda, w, opts, route, &grad);
        const double value = parts.value(lambda, opts);

        if (t == 1) initial_value = value;
        if ((t - 1) % 100 == 0)
            trace.push_back({step_offset + t - 1, value, parts.residual_l2norm(),
                             lambda * parts.wnn});
        if (!(value <= 1e6 * std::max(initial_value, 1e-300)))
            throw NumericalFailure("optimization diverged at step " +
                                   std::to_string(step_offset + t - 1) + ": objective " +
                                   std::to_string(value) + " vs initial " +
                                   std::to_string(initial_value));

        const double mu_t = nadam_mu(t);
        const double mu_next = nadam_mu(t + 1);
        mu_prod *= mu_t;
        const double mu_prod_next = mu_prod * mu_next;
        beta2_pow *= beta2;

        kernels::NadamCoeffs coeffs;
        coeffs.beta1 = beta1;
        coeffs.beta2 = beta2;
        coeffs.one_m_beta1 = 1.0 - beta1;
        coeffs.one_m_beta2 = 1.0 - beta2;
        coeffs.mhat_m = mu_next / (1.0 - mu_prod_next);
        coeffs.mhat_g = (1.0 - mu_t) / (1.0 - mu_prod);
        coeffs.v_inv = 1.0 / (1.0 - beta2_pow);
        coeffs.lr = lr0 / std::pow(cfg.lr_drop_factor, double((t - 1) / cfg.lr_drop_every));
        coeffs.eps = eps;

        kernels::active_ops().nadam_step(nflat, coeffs,
                                         reinterpret_cast<const double*>(grad.data()), m.data(),
                                         v.data(), reinterpret_cast<double*>(vars.data()));

        if (!conj_perm.empty() && t % 100 == 0) project_conjugate_symmetry(vars, n, q, conj_perm);
    }

    // Final recording at the reached point.
    const auto parts =
        detail::objective_and_gradient<Scalar>(pb, vars, lambda, w, opts, route, nullptr);
    trace.push_back({step_offset + cfg.inner_iters, parts.value(lambda, opts),
                     parts.residual_l2norm(), lambda * parts.wnn});
}

template <class Scalar>
SolveState run_driver(const Problem<Scalar>& pb, const SolverConfig& cfg,
                      const std::vector<Index>& conj_perm, bool full_driver) {
    using Mat = typename ScalarOps<Scalar>::Mat;
    openblas_set_num_threads(1);

    const Index n = pb.n, q = pb.q;
    Mat vars = draw_initialization<Scalar>(n, q, cfg.seed, cfg.init_scale);
    project_conjugate_symmetry(vars, n, q, conj_perm);

    SolveState state;
    state.symmetric = pb.symmetric;
    RVec w = RVec::Ones(n);
    const double lambda0 = cfg.lambda0;

    run_inner<Scalar>(pb, vars, lambda0, w, cfg.lr0, cfg, 0, state.trace, conj_perm,
                      SpectralRoute::gram);

    const int outer = full_driver ? cfg.outer_iters : 0;
    for (int i = 1; i <= outer; ++i) {
        // Realize A_i for the weight update in the symmetric parametrization.
        Mat stack = vars;
        if (pb.symmetric)
            for (Index b = 0; b < q; ++b) {
                auto Kb = vars.middleCols(b * n, n);
                stack.middleCols(b * n, n) = Kb + Kb.transpose();
            }
        const RVec sv = singular_values(stack);
        w = update_weights(sv, cfg.epsilon, cfg.max_val);

        const double lambda_i = cfg.lambda_schedule && i < int(cfg.lambda_schedule->size())
                                    ? (*cfg.lambda_schedule)[i]
                                    : lambda0 / double(i);
        const double lr_i = cfg.lr0 / std::pow(2.0, double(i));
        try {
            run_inner<Scalar>(pb, vars, lambda_i, w, lr_i, cfg,
                              static_cast<long>(i) * cfg.inner_iters, state.trace, conj_perm,
                              SpectralRoute::gram);
        } catch (const NumericalFailure& e) {
            throw NumericalFailure("outer iteration " + std::to_string(i) + ": " + e.what());
        }
        state.outer_index = i;
    }

    if constexpr (ScalarOps<Scalar>::reals_per_scalar == 1) {
        for (Index i = 0; i < q; ++i)
            state.A.push_back(vars.middleCols(i * n, n).template cast<cplx>());
    } else {
        state.A = detail::split_blocks(CMat(vars), q);
    }
    state.weights = w;
    return state;
}

SolveState dispatch(const ConstraintSystem& system, const SolverConfig& config,
                    bool full_driver) {
    const SolverConfig cfg = config.normalized();
    if (system.all_real()) {
        const auto pb = detail::make_real_problem(system);
        return run_driver<double>(pb, cfg, system.conj_perm, full_driver);
    }
    const auto pb = detail::make_problem(system);
    return run_driver<cplx>(pb, cfg, system.conj_perm, full_driver);
}

}  // namespace

MatList seeded_initialization(const ConstraintSystem& system, const SolverConfig& config) {
    const SolverConfig cfg = config.normalized();
    const Index n = system.n(), q = system.q();
    if (system.all_real()) {
        RMat stack = draw_initialization<double>(n, q, cfg.seed, cfg.init_scale);
        MatList out;
        for (Index i = 0; i < q; ++i) out.push_back(stack.middleCols(i * n, n).cast<cplx>());
        return out;
    }
    CMat stack = draw_initialization<cplx>(n, q, cfg.seed, cfg.init_scale);
    project_conjugate_symmetry(stack, n, q, system.conj_perm);
    return detail::split_blocks(stack, q);
}

SolveState optimize(const ConstraintSystem& system, const SolverConfig& config) {
    return dispatch(system, config, false);
}

SolveState solve_rsmi(const ConstraintSystem& system, const SolverConfig& config) {
    return dispatch(system, config, true);
}

}  // namespace strid
