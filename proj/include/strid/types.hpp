#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace strid {

using cplx = std::complex<double>;

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Ordered list of the q coefficient matrices of a structured map.
using MatList = std::vector<CMat>;

inline constexpr double kDefaultConditionCap = 1e14;

}  // namespace strid
