#include "strid/alpha.hpp"

#include <cmath>
#include <sstream>

namespace strid {
namespace {

// Integer power by repeated multiplication; exact for power 0/1 and free of
// the branch-cut surprises of pow(complex, double) on the negative real axis.
cplx ipow(cplx s, int k) {
    cplx r(1.0, 0.0);
    cplx base = s;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        if (e > 1) base *= base;
    }
    return r;
}

}  // namespace

AlphaFunction AlphaFunction::monomial(int power, double scale) {
    AlphaFunction f;
    f.kind = AlphaKind::Monomial;
    f.power = power;
    f.scale = scale;
    f.validate();
    return f;
}

AlphaFunction AlphaFunction::exp_delay(double tau, double scale) {
    AlphaFunction f;
    f.kind = AlphaKind::ExpDelay;
    f.tau = tau;
    f.scale = scale;
    f.validate();
    return f;
}

AlphaFunction AlphaFunction::param_coordinate(int index, double scale) {
    AlphaFunction f;
    f.kind = AlphaKind::ParamCoordinate;
    f.index = index;
    f.scale = scale;
    f.validate();
    return f;
}

AlphaFunction AlphaFunction::constant(double scale) {
    AlphaFunction f;
    f.kind = AlphaKind::Constant;
    f.scale = scale;
    f.validate();
    return f;
}

void AlphaFunction::validate() const {
    if (scale == 0.0) throw InvalidArgument("coefficient function scale must be nonzero");
    switch (kind) {
        case AlphaKind::Monomial:
            if (power < 0) throw InvalidArgument("monomial power must be nonnegative");
            break;
        case AlphaKind::ExpDelay:
            if (!(tau > 0.0)) throw InvalidArgument("delay tau must be positive");
            break;
        case AlphaKind::ParamCoordinate:
            if (index < 0) throw InvalidArgument("parameter coordinate index must be nonnegative");
            break;
        case AlphaKind::Constant:
            break;
    }
}

std::string AlphaFunction::describe() const {
    std::ostringstream os;
    if (scale != 1.0) os << scale << "*";
    switch (kind) {
        case AlphaKind::Monomial:
            os << "s^" << power;
            break;
        case AlphaKind::ExpDelay:
            os << "exp(-" << tau << "*s)";
            break;
        case AlphaKind::ParamCoordinate:
            os << "p[" << index << "]";
            break;
        case AlphaKind::Constant:
            os << "1";
            break;
    }
    return os.str();
}

cplx EvalPoint::s() const {
    if (!is_frequency()) throw IncompatibleEvalPoint("expected a frequency point");
    return std::get<cplx>(value_);
}

const RVec& EvalPoint::p() const {
    if (!is_parameter()) throw IncompatibleEvalPoint("expected a parameter point");
    return std::get<RVec>(value_);
}

std::string EvalPoint::describe() const {
    std::ostringstream os;
    if (is_frequency()) {
        const cplx v = s();
        os << "s=(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
    } else {
        os << "p=(";
        for (Index i = 0; i < p().size(); ++i) os << (i ? "," : "") << p()[i];
        os << ")";
    }
    return os.str();
}

bool EvalPoint::operator==(const EvalPoint& other) const {
    if (is_frequency() != other.is_frequency()) return false;
    if (is_frequency()) return s() == other.s();
    return p().size() == other.p().size() && p() == other.p();
}

cplx eval_alpha(const AlphaFunction& f, const EvalPoint& x) {
    switch (f.kind) {
        case AlphaKind::Constant:
            return cplx(f.scale, 0.0);
        case AlphaKind::Monomial: {
            if (!x.is_frequency())
                throw IncompatibleEvalPoint("incompatible evaluation point: " + f.describe() +
                                            " needs a frequency, got " + x.describe());
            return f.scale * ipow(x.s(), f.power);
        }
        case AlphaKind::ExpDelay: {
            if (!x.is_frequency())
                throw IncompatibleEvalPoint("incompatible evaluation point: " + f.describe() +
                                            " needs a frequency, got " + x.describe());
            return f.scale * std::exp(-f.tau * x.s());
        }
        case AlphaKind::ParamCoordinate: {
            if (!x.is_parameter())
                throw IncompatibleEvalPoint("incompatible evaluation point: " + f.describe() +
                                            " needs a parameter vector, got " + x.describe());
            if (f.index >= x.p().size())
                throw IncompatibleEvalPoint("incompatible evaluation point: coordinate " +
                                            std::to_string(f.index) + " out of range for " +
                                            x.describe());
            return cplx(f.scale * x.p()[f.index], 0.0);
        }
    }
    throw InvalidArgument("unknown coefficient function kind");
}

bool alpha_value_is_real(const AlphaFunction& f, const EvalPoint& x) {
    if (f.kind == AlphaKind::Constant || f.kind == AlphaKind::ParamCoordinate) return true;
    return x.is_frequency() && x.s().imag() == 0.0;
}

}  // namespace strid
