#pragma once

#include <string>
#include <variant>
#include <vector>

#include "strid/errors.hpp"
#include "strid/types.hpp"

namespace strid {

enum class AlphaKind { Monomial, ExpDelay, ParamCoordinate, Constant };

/// A scalar coefficient function multiplying one system matrix: a monomial in
/// the frequency, a delay exponential, a parameter coordinate, or a constant.
/// An optional scale factor supports rebalancing the coefficient functions
/// against their matrices without changing the response map.
struct AlphaFunction {
    AlphaKind kind = AlphaKind::Constant;
    int power = 0;     // Monomial: exponent >= 0
    double tau = 0.0;  // ExpDelay: delay > 0, in seconds
    int index = 0;     // ParamCoordinate: coordinate >= 0
    double scale = 1.0;

    static AlphaFunction monomial(int power, double scale = 1.0);
    static AlphaFunction exp_delay(double tau, double scale = 1.0);
    static AlphaFunction param_coordinate(int index, double scale = 1.0);
    static AlphaFunction constant(double scale = 1.0);

    /// Throws InvalidArgument when a field violates its range.
    void validate() const;

    bool needs_frequency() const {
        return kind == AlphaKind::Monomial || kind == AlphaKind::ExpDelay;
    }
    bool needs_parameter() const { return kind == AlphaKind::ParamCoordinate; }

    std::string describe() const;

    bool operator==(const AlphaFunction&) const = default;
};

/// Evaluation argument of a response map: either a complex frequency or a
/// real parameter vector. Exactly one variant is populated.
class EvalPoint {
  public:
    static EvalPoint frequency(cplx s) { return EvalPoint(s); }
    static EvalPoint parameter(RVec p) { return EvalPoint(std::move(p)); }

    bool is_frequency() const { return std::holds_alternative<cplx>(value_); }
    bool is_parameter() const { return !is_frequency(); }

    cplx s() const;
    const RVec& p() const;

    /// Parameter dimension, 0 for frequency points.
    Index dim() const { return is_parameter() ? p().size() : 0; }

    std::string describe() const;

    bool operator==(const EvalPoint& other) const;

  private:
    explicit EvalPoint(cplx s) : value_(s) {}
    explicit EvalPoint(RVec p) : value_(std::move(p)) {}
    std::variant<cplx, RVec> value_;
};

/// Evaluates one coefficient function at one point.
/// Throws IncompatibleEvalPoint when the variant does not fit the kind, or
/// when a parameter coordinate is out of range.
cplx eval_alpha(const AlphaFunction& f, const EvalPoint& x);

/// True when eval_alpha(f, x) is real for this (function, point) pair; used
/// to select the real arithmetic lane.
bool alpha_value_is_real(const AlphaFunction& f, const EvalPoint& x);

}  // namespace strid
