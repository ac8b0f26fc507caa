#include <doctest.h>

#include "strid/benchmarks.hpp"
#include "strid/model.hpp"
#include "test_util.hpp"

using namespace strid;
using namespace strid::testing;

TEST_CASE("eval_alpha matches the coefficient function table") {
    // Monomial(2) at s = 2i -> (2i)^2 = -4
    auto m2 = AlphaFunction::monomial(2);
    const cplx v = eval_alpha(m2, EvalPoint::frequency(cplx(0, 2)));
    CHECK(v.real() == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-14));

    // ExpDelay(1.0) at s = 0 -> e^0 = 1
    auto d = AlphaFunction::exp_delay(1.0);
    CHECK(eval_alpha(d, EvalPoint::frequency(cplx(0, 0))) == cplx(1.0, 0.0));

    // ParamCoordinate(2) at p = (0.1, 5, 7, 3) -> 7
    auto pc = AlphaFunction::param_coordinate(2);
    RVec p(4);
    p << 0.1, 5, 7, 3;
    CHECK(eval_alpha(pc, EvalPoint::parameter(p)) == cplx(7.0, 0.0));

    // scale factors multiply the base value
    auto scaled = AlphaFunction::monomial(1, 2.5);
    CHECK(eval_alpha(scaled, EvalPoint::frequency(cplx(2, 0))) == cplx(5.0, 0.0));
}

TEST_CASE("eval_alpha rejects incompatible evaluation points") {
    auto pc = AlphaFunction::param_coordinate(0);
    CHECK_THROWS_AS(eval_alpha(pc, EvalPoint::frequency(cplx(1, 0))), IncompatibleEvalPoint);
    auto m = AlphaFunction::monomial(1);
    RVec p(1);
    p << 1.0;
    CHECK_THROWS_AS(eval_alpha(m, EvalPoint::parameter(p)), IncompatibleEvalPoint);
    // coordinate out of range
    auto far = AlphaFunction::param_coordinate(5);
    CHECK_THROWS_AS(eval_alpha(far, EvalPoint::parameter(p)), IncompatibleEvalPoint);
}

TEST_CASE("alpha validation enforces field ranges") {
    CHECK_THROWS_AS(AlphaFunction::exp_delay(0.0), InvalidArgument);
    CHECK_THROWS_AS(AlphaFunction::exp_delay(-1.0), InvalidArgument);
    CHECK_THROWS_AS(AlphaFunction::monomial(-1), InvalidArgument);
    CHECK_THROWS_AS(AlphaFunction::constant(0.0), InvalidArgument);
}

TEST_CASE("eval_transfer: scalar delay closed form") {
    auto [gt, samples] = gen_scalar_delay();
    // H(0) = 1 / (0 + 1 - 0.25) = 4/3
    const CMat h0 = eval_transfer(gt.model, EvalPoint::frequency(cplx(0, 0)));
    CHECK(h0(0, 0).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(h0(0, 0).imag() == doctest::Approx(0.0));
    // default training points are sigma = 0.5, 1.0 with closed-form values
    REQUIRE(samples.size() == 2);
    auto closed = [](double s) { return 1.0 / (s + 1.0 - 0.25 * std::exp(-s)); };
    CHECK(samples.responses[0](0, 0).real() == doctest::Approx(closed(0.5)).epsilon(1e-14));
    CHECK(samples.responses[1](0, 0).real() == doctest::Approx(closed(1.0)).epsilon(1e-14));
}

TEST_CASE("eval_transfer: identity case") {
    StructuredModel m;
    m.alphas = {AlphaFunction::constant()};
    m.A = {CMat::Identity(3, 3)};
    m.B = CMat::Zero(3, 1);
    m.B(0, 0) = 1.0;
    m.C = m.B.transpose();
    for (double w : {0.0, 1.0, 31.4}) {
        const CMat h = eval_transfer(m, EvalPoint::frequency(cplx(0, w)));
        CHECK(h(0, 0) == cplx(1.0, 0.0));
    }
}

TEST_CASE("eval_transfer: delay rod against an independent dense solve") {
    GroundTruth gt = gen_delay_rod(101, 1.0);
    const cplx s(0.0, 10.0);
    const CMat h = eval_transfer(gt.model, EvalPoint::frequency(s));

    // independent oracle: assemble the pencil directly and solve densely
    const Index n = gt.model.order();
    CMat K = CMat::Zero(n, n);
    K += s * CMat::Identity(n, n);
    const double sc = 102.0 * 102.0;
    for (Index i = 0; i < n; ++i) {
        K(i, i) += 2.0 * sc;
        if (i + 1 < n) {
            K(i, i + 1) += -sc;
            K(i + 1, i) += -sc;
        }
    }
    K += -0.25 * std::exp(-s) * CMat::Identity(n, n);
    const CMat x = K.fullPivLu().solve(gt.model.B);
    const cplx oracle = (gt.model.C * x)(0, 0);
    CHECK(std::abs(h(0, 0) - oracle) <= 1e-10 * std::abs(oracle));
}

TEST_CASE("eval_transfer: 1x1 system equals the closed scalar formula") {
    StructuredModel m;
    m.alphas = {AlphaFunction::monomial(1), AlphaFunction::constant()};
    m.A = {CMat::Constant(1, 1, cplx(2.0, 0.0)), CMat::Constant(1, 1, cplx(0.5, -0.3))};
    m.B = CMat::Constant(1, 1, cplx(1.5, 0.2));
    m.C = CMat::Constant(1, 1, cplx(-0.7, 1.1));
    const cplx s(0.3, 2.0);
    const cplx expected = m.C(0, 0) * m.B(0, 0) / (s * m.A[0](0, 0) + m.A[1](0, 0));
    const cplx got = eval_transfer(m, EvalPoint::frequency(s))(0, 0);
    CHECK(std::abs(got - expected) <= 1e-15 * std::abs(expected));
}

TEST_CASE("eval_transfer throws a typed error on a singular pencil") {
    StructuredModel m;
    m.alphas = {AlphaFunction::monomial(1), AlphaFunction::constant()};
    m.A = {CMat::Identity(2, 2), CMat::Zero(2, 2)};
    m.B = CMat::Ones(2, 1);
    m.C = CMat::Ones(1, 2);
    CHECK_THROWS_AS(eval_transfer(m, EvalPoint::frequency(cplx(0, 0))), SingularPencil);
    try {
        eval_transfer(m, EvalPoint::frequency(cplx(0, 0)));
    } catch (const SingularPencil& e) {
        CHECK(e.condition_estimate >= kDefaultConditionCap);
        CHECK(std::string(e.what()).find("s=") != std::string::npos);
    }
}

TEST_CASE("scaling invariance: (c alpha_i, A_i / c) leaves the transfer unchanged") {
    GroundTruth gt = random_structured_system(6, 3, 42);
    StructuredModel scaled = gt.model;
    const double factors[] = {2.0, -0.125, 10.0};
    for (std::size_t i = 0; i < scaled.alphas.size(); ++i) {
        scaled.alphas[i].scale *= factors[i];
        scaled.A[i] /= factors[i];
    }
    for (unsigned k = 0; k < 5; ++k) {
        const EvalPoint pt = EvalPoint::frequency(cplx(0.1 * k, 1.0 + k));
        const CMat a = eval_transfer(gt.model, pt);
        const CMat b = eval_transfer(scaled, pt);
        CHECK((a - b).norm() <= 1e-12 * a.norm());
    }
}

TEST_CASE("linear solve agrees with an explicit inverse on well-conditioned systems") {
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        GroundTruth gt = random_structured_system(8, 2, seed, 2, 3);
        const EvalPoint pt = EvalPoint::frequency(cplx(0.2, 1.7));
        const CMat via_solve = eval_transfer(gt.model, pt);
        CMat K = CMat::Zero(8, 8);
        for (std::size_t i = 0; i < gt.model.A.size(); ++i)
            K += eval_alpha(gt.model.alphas[i], pt) * gt.model.A[i];
        const CMat via_inverse = gt.model.C * K.inverse() * gt.model.B;
        CHECK((via_solve - via_inverse).norm() <= 1e-10 * via_inverse.norm());
    }
}

TEST_CASE("transpose_map transposes the response map") {
    // symmetric SISO model: transfer values unchanged
    GroundTruth rod = gen_delay_rod(21, 1.0);
    StructuredModel t = transpose_map(rod.model);
    for (unsigned k = 0; k < 5; ++k) {
        const EvalPoint pt = EvalPoint::frequency(cplx(0, 0.5 + 2.0 * k));
        CHECK((eval_transfer(rod.model, pt) - eval_transfer(t, pt)).norm() <= 1e-12);
    }

    // random 2-input / 3-output model: H^T pointwise
    GroundTruth gt = random_structured_system(7, 3, 7, 3, 2);
    StructuredModel tm = transpose_map(gt.model);
    CHECK(tm.inputs() == 3);
    CHECK(tm.outputs() == 2);
    for (unsigned k = 0; k < 4; ++k) {
        const EvalPoint pt = EvalPoint::frequency(cplx(0.1, 0.7 + k));
        const CMat h = eval_transfer(gt.model, pt);
        const CMat ht = eval_transfer(tm, pt);
        CHECK((ht - h.transpose()).norm() <= 1e-12 * h.norm());
    }

    // applying twice restores the original matrices bit-identically
    StructuredModel twice = transpose_map(transpose_map(gt.model));
    for (std::size_t i = 0; i < gt.model.A.size(); ++i) REQUIRE(twice.A[i] == gt.model.A[i]);
    REQUIRE(twice.B == gt.model.B);
    REQUIRE(twice.C == gt.model.C);
}

TEST_CASE("model validation catches dimension and symmetry violations") {
    StructuredModel m;
    m.alphas = {AlphaFunction::constant()};
    m.A = {CMat::Identity(2, 2)};
    m.B = CMat::Ones(3, 1);  // wrong rows
    m.C = CMat::Ones(1, 2);
    CHECK_THROWS_AS(m.validate(), DimensionMismatch);

    m.B = CMat::Ones(2, 1);
    m.validate();

    m.symmetric = true;
    m.A[0](0, 1) = 5.0;  // break symmetry
    CHECK_THROWS_AS(m.validate(), InvalidArgument);
}
