#pragma once

#include <string>
#include <utility>

#include "strid/model.hpp"
#include "strid/samples.hpp"
#include "strid/types.hpp"

namespace strid {

/// A synthetic full-order system acting as the "unknown" data source,
/// together with its default sampling ranges.
struct GroundTruth {
    StructuredModel model;
    std::string description;
    bool parametric = false;
    double default_lo = 1e-1;   // frequency range (imaginary axis) or parameter box
    double default_hi = 1e3;
    int default_train = 150;
};

/// Scalar delay system with transfer function 1 / (s + 1 - 0.25 e^{-s}) and
/// its default two-point training set at sigma = {0.5, 1.0}.
std::pair<GroundTruth, SampleSet> gen_scalar_delay();
GroundTruth gen_scalar_delay_truth();

/// 1D heat rod semi-discretization of order n with a delayed feedback term:
/// E = I, A = (n+1)^2 tridiag(1,-2,1), A_tau = 0.25 I, B = C^T = e_{ceil(n/2)},
/// delay tau.
GroundTruth gen_delay_rod(int n = 101, double tau = 1.0);

/// Affine parametric diffusion on the unit square (grid x grid interior
/// nodes, homogeneous Dirichlet): stiffness split over the four disjoint
/// quadrants, q = 5 with a retained constant term whose matrix is zero,
/// unit load and mean-value output.
GroundTruth gen_thermal_block(int grid = 31);

/// Logarithmically spaced points sigma_j = i w_j, w in [lo, hi], responses by
/// evaluation; optional conjugate closure doubles the set (pairs adjacent).
SampleSet sample_frequencies(const GroundTruth& gt, int count, double lo, double hi,
                             bool conjugate_close = false);

/// Full tensor grid with points_per_axis equidistant values per parameter
/// axis over [lo, hi].
SampleSet sample_parameters(const GroundTruth& gt, int points_per_axis, double lo = 0.1,
                            double hi = 10.0);

/// Interpolatory projection of the full-order model onto the sample points:
/// V and W columns solve the pencil at each point, the projected matrices
/// satisfy the assembled constraints and interpolate the data. This is the
/// intrusive oracle behind the property suites.
struct OracleResult {
    CMat V;  // n x N
    CMat W;  // n x N
    StructuredModel projected;
};
OracleResult intrusive_oracle(const GroundTruth& gt, const SampleSet& samples,
                              double cond_cap = kDefaultConditionCap);

}  // namespace strid
