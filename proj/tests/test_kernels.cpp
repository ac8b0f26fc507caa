#include <doctest.h>

#include <vector>

#include "strid/kernels.hpp"
#include "test_util.hpp"

using namespace strid;
using namespace strid::testing;

namespace {
const std::vector<std::size_t> kSizes{1, 2, 3, 5, 8, 17, 64, 129, 1000};
}

TEST_CASE("complex axpy: AVX2 variant matches the scalar reference bit for bit") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_ops();
    for (std::size_t n : kSizes) {
        CMat x = random_cmat(Index(n), 1, unsigned(100 + n));
        CMat y0 = random_cmat(Index(n), 1, unsigned(200 + n));
        CMat y1 = y0;
        const cplx a(0.37, -1.21);
        s.axpy_cplx(n, a, x.data(), y0.data());
        v.axpy_cplx(n, a, x.data(), y1.data());
        REQUIRE(y0 == y1);
    }
}

TEST_CASE("real axpy: AVX2 variant matches the scalar reference bit for bit") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_ops();
    for (std::size_t n : kSizes) {
        RMat x = random_rmat(Index(n), 1, unsigned(300 + n));
        RMat y0 = random_rmat(Index(n), 1, unsigned(400 + n));
        RMat y1 = y0;
        s.axpy_real(n, -0.83, x.data(), y0.data());
        v.axpy_real(n, -0.83, x.data(), y1.data());
        REQUIRE(y0 == y1);
    }
}

TEST_CASE("norm reductions agree between kernels up to accumulation order") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_ops();
    for (std::size_t n : kSizes) {
        CMat z = random_cmat(Index(n), 1, unsigned(500 + n));
        double l1a = 0, l2a = 0, l1b = 0, l2b = 0;
        s.norms_cplx(n, z.data(), &l1a, &l2a);
        v.norms_cplx(n, z.data(), &l1b, &l2b);
        CHECK(l1a == doctest::Approx(l1b).epsilon(1e-13));
        CHECK(l2a == doctest::Approx(l2b).epsilon(1e-13));

        RMat r = random_rmat(Index(n), 1, unsigned(600 + n));
        double m1a = 0, m2a = 0, m1b = 0, m2b = 0;
        s.norms_real(n, r.data(), &m1a, &m2a);
        v.norms_real(n, r.data(), &m1b, &m2b);
        CHECK(m1a == doctest::Approx(m1b).epsilon(1e-13));
        CHECK(m2a == doctest::Approx(m2b).epsilon(1e-13));
    }
}

TEST_CASE("norms accumulate into the output arguments") {
    const auto& s = kernels::scalar_ops();
    CMat z(2, 1);
    z << cplx(3, 4), cplx(0, 0);
    double l1 = 10.0, l2 = 20.0;
    s.norms_cplx(2, z.data(), &l1, &l2);
    CHECK(l1 == doctest::Approx(15.0));
    CHECK(l2 == doctest::Approx(45.0));
}

TEST_CASE("sign_combine: phase/sign plus linear term, zero-safe, bit-identical") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_ops();
    for (std::size_t n : kSizes) {
        CMat r = random_cmat(Index(n), 1, unsigned(700 + n));
        if (n >= 3) r(Index(n) / 2, 0) = 0.0;  // exercise the zero branch
        CMat o0(Index(n), 1), o1(Index(n), 1);
        s.sign_combine_cplx(n, r.data(), 1.0, 2.0, o0.data());
        v.sign_combine_cplx(n, r.data(), 1.0, 2.0, o1.data());
        REQUIRE(o0 == o1);

        RMat rr = random_rmat(Index(n), 1, unsigned(800 + n));
        if (n >= 3) rr(Index(n) / 2, 0) = 0.0;
        RMat p0(Index(n), 1), p1(Index(n), 1);
        s.sign_combine_real(n, rr.data(), 0.5, -1.5, p0.data());
        v.sign_combine_real(n, rr.data(), 0.5, -1.5, p1.data());
        REQUIRE(p0 == p1);
    }

    // phase(z) has unit modulus; at zero the output is exactly c2 * 0 = 0
    CMat z(2, 1);
    z << cplx(0, 0), cplx(-2, 0);
    CMat o(2, 1);
    s.sign_combine_cplx(2, z.data(), 3.0, 0.0, o.data());
    CHECK(std::abs(o(0, 0)) == 0.0);
    CHECK(o(1, 0).real() == doctest::Approx(-3.0));
}

TEST_CASE("nadam_step: AVX2 variant matches the scalar reference bit for bit") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_ops();
    kernels::NadamCoeffs c{};
    c.beta1 = 0.9;
    c.beta2 = 0.999;
    c.one_m_beta1 = 0.1;
    c.one_m_beta2 = 0.001;
    c.mhat_m = 1.7;
    c.mhat_g = 0.33;
    c.v_inv = 1.0 / 0.37;
    c.lr = 5e-3;
    c.eps = 1e-8;
    for (std::size_t n : kSizes) {
        RMat g = random_rmat(Index(n), 1, unsigned(900 + n));
        RMat m0 = random_rmat(Index(n), 1, unsigned(1000 + n)).cwiseAbs();
        RMat v0 = random_rmat(Index(n), 1, unsigned(1100 + n)).cwiseAbs();
        RMat p0 = random_rmat(Index(n), 1, unsigned(1200 + n));
        RMat m1 = m0, v1 = v0, p1 = p0;
        s.nadam_step(n, c, g.data(), m0.data(), v0.data(), p0.data());
        v.nadam_step(n, c, g.data(), m1.data(), v1.data(), p1.data());
        REQUIRE(m0 == m1);
        REQUIRE(v0 == v1);
        REQUIRE(p0 == p1);
    }
}

TEST_CASE("runtime dispatch selects a valid table") {
    const auto& ops = kernels::active_ops();
    CHECK(ops.axpy_cplx != nullptr);
    MESSAGE("active kernel table: ", ops.name);
}

TEST_CASE("axpy_cols matches per-column axpy bit for bit") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_ops();
    const Index rows = 37, cols = 11;
    CMat x = random_cmat(rows, cols, 1500);
    CMat a = random_cmat(cols, 1, 1501);
    CMat y0 = random_cmat(rows, cols, 1502);
    CMat y1 = y0, y2 = y0;
    for (Index j = 0; j < cols; ++j)
        s.axpy_cplx(std::size_t(rows), a(j, 0), x.col(j).data(), y0.col(j).data());
    s.axpy_cols_cplx(std::size_t(rows), std::size_t(cols), a.data(), x.data(), y1.data());
    v.axpy_cols_cplx(std::size_t(rows), std::size_t(cols), a.data(), x.data(), y2.data());
    REQUIRE(y0 == y1);
    REQUIRE(y0 == y2);

    RMat rx = random_rmat(rows, cols, 1503);
    RMat ra = random_rmat(cols, 1, 1504);
    RMat ry0 = random_rmat(rows, cols, 1505);
    RMat ry1 = ry0, ry2 = ry0;
    for (Index j = 0; j < cols; ++j)
        s.axpy_real(std::size_t(rows), ra(j, 0), rx.col(j).data(), ry0.col(j).data());
    s.axpy_cols_real(std::size_t(rows), std::size_t(cols), ra.data(), rx.data(), ry1.data());
    v.axpy_cols_real(std::size_t(rows), std::size_t(cols), ra.data(), rx.data(), ry2.data());
    REQUIRE(ry0 == ry1);
    REQUIRE(ry0 == ry2);
}
