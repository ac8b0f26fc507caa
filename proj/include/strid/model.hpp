#pragma once

#include <string>
#include <vector>

#include "strid/alpha.hpp"
#include "strid/types.hpp"

namespace strid {

/// A structured response map H(x) = C (sum_i alpha_i(x) A_i)^{-1} B given by
/// q coefficient functions and dense matrices. This is the single object the
/// toolkit produces, compresses, serializes and evaluates.
struct StructuredModel {
    std::vector<AlphaFunction> alphas;
    MatList A;  // q square r x r matrices
    CMat B;     // r x m
    CMat C;     // l x r
    bool symmetric = false;

    Index order() const { return A.empty() ? 0 : A.front().rows(); }
    Index q() const { return static_cast<Index>(A.size()); }
    Index inputs() const { return B.cols(); }
    Index outputs() const { return C.rows(); }

    /// Checks matrix dimensions, alpha validity, and (when the symmetric flag
    /// is set) symmetry of every A_i up to 1e-12 relative.
    void validate() const;

    /// Largest parameter coordinate index referenced by the alphas, plus one.
    Index parameter_dim() const;

    bool is_real(double tol = 0.0) const;
};

/// Evaluates the response map at a point via linear solve (never an explicit
/// inverse). Throws SingularPencil when the condition estimate of the pencil
/// exceeds cond_cap.
CMat eval_transfer(const StructuredModel& model, const EvalPoint& x,
                   double cond_cap = kDefaultConditionCap);

/// The map of the transposed system: A_i -> A_i^T, B -> C^T, C -> B^T. Its
/// transfer function is the transpose of the original's at every point.
StructuredModel transpose_map(const StructuredModel& model);

/// JSON serialization (format documented in README: alphas, A, B, C,
/// symmetric; complex entries as [re, im] pairs, matrices row-major).
std::string model_to_json(const StructuredModel& model);
StructuredModel model_from_json(const std::string& text);
void save_model(const StructuredModel& model, const std::string& path);
StructuredModel load_model(const std::string& path);

}  // namespace strid
