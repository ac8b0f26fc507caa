#include "strid/objective.hpp"

#include "strid/detail/engine.hpp"

namespace strid {

double objective(const ConstraintSystem& system, const MatList& A, double lambda, const RVec& w,
                 const ResidualNormOpts& opts) {
    const auto pb = detail::make_problem(system);
    const CMat vars = detail::hstack_blocks(A);
    const auto parts = detail::objective_and_gradient<cplx>(pb, vars, lambda, w, opts,
                                                            detail::SpectralRoute::svd, nullptr);
    return parts.value(lambda, opts);
}

MatList objective_gradient(const ConstraintSystem& system, const MatList& A, double lambda,
                           const RVec& w, const ResidualNormOpts& opts) {
    const auto pb = detail::make_problem(system);
    const CMat vars = detail::hstack_blocks(A);
    CMat grad;
    detail::objective_and_gradient<cplx>(pb, vars, lambda, w, opts, detail::SpectralRoute::svd,
                                         &grad);
    return detail::split_blocks(grad, system.q());
}

}  // namespace strid
