#include <doctest.h>

#include "strid/benchmarks.hpp"
#include "strid/constraints.hpp"
#include "test_util.hpp"

using namespace strid;
using namespace strid::testing;

TEST_CASE("scalar delay: conjugate-closed sampling keeps conjugate responses") {
    GroundTruth gt = gen_scalar_delay_truth();
    const SampleSet s = sample_frequencies(gt, 1, 0.5, 0.5, true);
    REQUIRE(s.size() == 2);
    CHECK(s.points[0].s() == cplx(0, 0.5));
    CHECK(s.points[1].s() == cplx(0, -0.5));
    CHECK(s.responses[1](0, 0) == std::conj(s.responses[0](0, 0)));
    s.validate();
}

TEST_CASE("delay rod construction") {
    GroundTruth rod = gen_delay_rod(101, 1.0);
    REQUIRE(rod.model.order() == 101);

    SUBCASE("matrices are exactly symmetric") {
        for (const auto& a : rod.model.A) CHECK((a - a.transpose()).norm() == 0.0);
        CHECK(rod.model.B == CMat(rod.model.C.transpose()));
    }

    SUBCASE("transfer function is strictly proper") {
        const CMat h = eval_transfer(rod.model, EvalPoint::frequency(cplx(0, 1e6)));
        CHECK(std::abs(h(0, 0)) <= 1e-4);
    }

    SUBCASE("input validation") { CHECK_THROWS_AS(gen_delay_rod(2, 1.0), InvalidArgument); }
}

TEST_CASE("thermal block: affine assembly against a monolithic Poisson oracle") {
    const int grid = 6;
    GroundTruth tb = gen_thermal_block(grid);
    REQUIRE(tb.model.q() == 5);
    const Index n = grid * grid;

    SUBCASE("p = (1,1,1,1) reproduces the single-coefficient Poisson solve") {
        // monolithic assembly of the 5-point Laplacian
        const double h = 1.0 / (grid + 1), c = 1.0 / (h * h);
        RMat lap = RMat::Zero(n, n);
        for (int iy = 0; iy < grid; ++iy)
            for (int ix = 0; ix < grid; ++ix) {
                const int u = iy * grid + ix;
                lap(u, u) = 4.0 * c;
                if (ix + 1 < grid) lap(u, u + 1) = -c;
                if (ix > 0) lap(u, u - 1) = -c;
                if (iy + 1 < grid) lap(u, u + grid) = -c;
                if (iy > 0) lap(u, u - grid) = -c;
            }
        const RVec x = lap.partialPivLu().solve(RVec::Ones(n));
        const double oracle = x.mean();

        RVec p = RVec::Ones(4);
        const CMat y = eval_transfer(tb.model, EvalPoint::parameter(p));
        CHECK(y(0, 0).real() == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(y(0, 0).imag() == 0.0);

        // the affine pieces sum to the monolithic operator
        CMat sum = CMat::Zero(n, n);
        for (std::size_t i = 1; i < tb.model.A.size(); ++i) sum += tb.model.A[i];
        CHECK((sum.real() - lap).norm() <= 1e-12 * lap.norm());
    }

    SUBCASE("each stiffness piece is symmetric positive semidefinite, the sum definite") {
        RMat sum = RMat::Zero(n, n);
        for (std::size_t i = 1; i < tb.model.A.size(); ++i) {
            const RMat a = tb.model.A[i].real();
            CHECK((a - a.transpose()).norm() == 0.0);
            Eigen::SelfAdjointEigenSolver<RMat> es(a);
            CHECK(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().maxCoeff());
            sum += a;
        }
        Eigen::SelfAdjointEigenSolver<RMat> es(sum);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }

    SUBCASE("output scales inversely with uniform parameter scaling") {
        RVec p1 = RVec::Ones(4);
        const double y1 = eval_transfer(tb.model, EvalPoint::parameter(p1))(0, 0).real();
        for (double c : {2.0, 5.0, 0.1}) {
            RVec pc = c * RVec::Ones(4);
            const double yc = eval_transfer(tb.model, EvalPoint::parameter(pc))(0, 0).real();
            CHECK(yc == doctest::Approx(y1 / c).epsilon(1e-12));
        }
    }

    SUBCASE("input validation") { CHECK_THROWS_AS(gen_thermal_block(3), InvalidArgument); }
}

TEST_CASE("sample_frequencies: counts, endpoints, closure") {
    GroundTruth rod = gen_delay_rod(31, 1.0);
    const SampleSet s150 = sample_frequencies(rod, 150, 1e-1, 1e3);
    CHECK(s150.size() == 150);

    const SampleSet s2 = sample_frequencies(rod, 2, 1e-1, 1e3);
    CHECK(s2.points[0].s() == cplx(0, 1e-1));
    CHECK(s2.points[1].s() == cplx(0, 1e3));

    const SampleSet closed = sample_frequencies(rod, 5, 1e-1, 1e3, true);
    CHECK(closed.size() == 10);
    CHECK(closed.conjugate_closed);
    closed.validate();
}

TEST_CASE("sample_parameters: tensor grids") {
    GroundTruth tb = gen_thermal_block(4);
    CHECK(sample_parameters(tb, 4).size() == 256);
    CHECK(sample_parameters(tb, 5).size() == 625);

    const SampleSet corners = sample_parameters(tb, 2);
    CHECK(corners.size() == 16);
    for (Index j = 0; j < corners.size(); ++j)
        for (Index k = 0; k < 4; ++k) {
            const double v = corners.points[j].p()[k];
            CHECK((v == 0.1 || v == 10.0));
        }
}

TEST_CASE("intrusive oracle interpolates the data and its derivative") {
    GroundTruth rod = gen_delay_rod(41, 1.0);
    const SampleSet samples = sample_frequencies(rod, 10, 0.2, 50.0);
    const auto oracle = intrusive_oracle(rod, samples);

    // Interpolatory bases are used exactly as constructed (the feasibility
    // contract needs them unorthonormalized), so the projected pencil can be
    // ill-conditioned; evaluation gets an explicit generous cap.
    const double cap = 1e30;
    for (Index j = 0; j < samples.size(); ++j) {
        const CMat h = eval_transfer(oracle.projected, samples.points[j], cap);
        CHECK((h - samples.responses[j]).norm() <= 1e-8 * samples.responses[j].norm());
    }

    // derivative interpolation, checked against central differences
    const double h = 1e-5;
    for (Index j = 0; j < samples.size(); ++j) {
        const cplx s = samples.points[j].s();
        auto dnum = [&](const StructuredModel& m) {
            const CMat hp = eval_transfer(m, EvalPoint::frequency(s + h), cap);
            const CMat hm = eval_transfer(m, EvalPoint::frequency(s - h), cap);
            return CMat((hp - hm) / (2 * h));
        };
        const CMat d_full = dnum(rod.model);
        const CMat d_red = dnum(oracle.projected);
        CHECK((d_full - d_red).norm() <= 1e-4 * d_full.norm());
    }
}

TEST_CASE("intrusive oracle with a single point gives an exact order-1 match") {
    GroundTruth rod = gen_delay_rod(21, 1.0);
    SampleSet one;
    const EvalPoint pt = EvalPoint::frequency(cplx(0, 3.0));
    one.points.push_back(pt);
    one.responses.push_back(eval_transfer(rod.model, pt));
    const auto oracle = intrusive_oracle(rod, one);
    CHECK(oracle.projected.order() == 1);
    const CMat h = eval_transfer(oracle.projected, pt);
    CHECK((h - one.responses[0]).norm() <= 1e-10 * one.responses[0].norm());
}

TEST_CASE("tangential oracle interpolates along the directions") {
    GroundTruth gt = random_structured_system(12, 2, 301, 3, 2);
    SampleSet samples;
    std::vector<CVec> bs, cs;
    for (int j = 0; j < 4; ++j) {
        const EvalPoint pt = EvalPoint::frequency(cplx(0.1, 1.0 + j));
        samples.points.push_back(pt);
        samples.responses.push_back(eval_transfer(gt.model, pt));
        bs.push_back(random_unit_cvec(2, 700 + j));
        cs.push_back(random_unit_cvec(3, 800 + j));
    }
    samples.right_dirs = bs;
    samples.left_dirs = cs;

    const auto oracle = intrusive_oracle(gt, samples);
    const auto sys = assemble_constraints(samples, gt.model.alphas);
    const auto [r1, r2] = residuals(sys, oracle.projected.A);
    CHECK(r1.norm() <= 1e-10 * std::max(1.0, sys.rhs_right.norm()));
    CHECK(r2.norm() <= 1e-10 * std::max(1.0, sys.rhs_left.norm()));

    for (Index j = 0; j < samples.size(); ++j) {
        const CMat hr = eval_transfer(oracle.projected, samples.points[j], 1e30);
        const CMat hf = samples.responses[j];
        CHECK((hr * bs[j] - hf * bs[j]).norm() <= 1e-8 * (hf * bs[j]).norm());
        CHECK((cs[j].transpose() * hr - cs[j].transpose() * hf).norm() <=
              1e-8 * (cs[j].transpose() * hf).norm());
    }
}

TEST_CASE("response normalization is exactly invertible") {
    GroundTruth rod = gen_delay_rod(15, 1.0);
    const SampleSet samples = sample_frequencies(rod, 7, 0.2, 20.0);
    const auto [scaled, factor] = normalize_responses(samples);
    double peak = 0;
    for (const auto& h : scaled.responses) peak = std::max(peak, h.cwiseAbs().maxCoeff());
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-15));
    const SampleSet back = denormalize_responses(scaled, factor);
    for (Index j = 0; j < samples.size(); ++j) {
        CHECK((back.responses[j] - samples.responses[j]).norm() <=
              1e-15 * samples.responses[j].norm());
    }
}
