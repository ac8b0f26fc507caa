#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strid/alpha.hpp"
#include "strid/types.hpp"

namespace strid {

/// Training or test tuples (sigma_i, H(sigma_i)), with optional tangential
/// directions for MIMO data.
struct SampleSet {
    std::vector<EvalPoint> points;
    std::vector<CMat> responses;                  // each l x m
    std::optional<std::vector<CVec>> right_dirs;  // b_i, length m, unit 2-norm
    std::optional<std::vector<CVec>> left_dirs;   // c_i, length l, unit 2-norm
    bool conjugate_closed = false;

    Index size() const { return static_cast<Index>(points.size()); }
    Index outputs() const { return responses.empty() ? 0 : responses.front().rows(); }
    Index inputs() const { return responses.empty() ? 0 : responses.front().cols(); }
    bool has_directions() const { return right_dirs.has_value() && left_dirs.has_value(); }

    /// Enforces the invariants: nonempty, consistent response dimensions,
    /// both direction lists present with matching length and unit norm, and
    /// (when flagged) conjugate closure of points and responses to 1e-12.
    void validate() const;

    /// True when every point and response is real (selects the real lane).
    bool all_real() const;

    /// For conjugate-closed sets: perm[j] = index of the point conjugate to
    /// point j (fixed point for real points). Throws PairingError when a
    /// conjugate partner is missing within tol.
    std::vector<Index> conjugate_permutation(double tol = 1e-10) const;
};

/// Scales all responses by 1/max_abs so the largest response magnitude is 1.
/// Returns the scaled set and the factor; denormalize inverts exactly.
std::pair<SampleSet, double> normalize_responses(const SampleSet& samples);
SampleSet denormalize_responses(const SampleSet& samples, double factor);

/// Fills missing tangential directions for MIMO data by cycling through the
/// canonical unit vectors (deterministic), or by seeded random unit vectors.
void fill_default_directions(SampleSet& samples, bool random = false, unsigned seed = 0);

/// JSON serialization: {l, m, conjugate_closed, samples: [{point, H, b?, c?}]}.
std::string samples_to_json(const SampleSet& samples);
SampleSet samples_from_json(const std::string& text);
void save_samples(const SampleSet& samples, const std::string& path);
SampleSet load_samples(const std::string& path);

}  // namespace strid
