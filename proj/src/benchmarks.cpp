#include "strid/benchmarks.hpp"

#include <cmath>
#include <limits>

#include "strid/errors.hpp"

namespace strid {

GroundTruth gen_scalar_delay_truth() {
    StructuredModel m;
    m.alphas = {AlphaFunction::monomial(1), AlphaFunction::constant(),
                AlphaFunction::exp_delay(1.0)};
    m.A = {CMat::Constant(1, 1, 1.0), CMat::Constant(1, 1, 1.0), CMat::Constant(1, 1, -0.25)};
    m.B = CMat::Constant(1, 1, 1.0);
    m.C = CMat::Constant(1, 1, 1.0);
    m.symmetric = true;

    GroundTruth gt;
    gt.model = std::move(m);
    gt.description = "scalar delay system, H(s) = 1/(s + 1 - 0.25 e^{-s})";
    gt.default_lo = 1e-2;
    gt.default_hi = 1e2;
    gt.default_train = 2;
    return gt;
}

std::pair<GroundTruth, SampleSet> gen_scalar_delay() {
    GroundTruth gt = gen_scalar_delay_truth();
    SampleSet samples;
    for (double sigma : {0.5, 1.0}) {
        const EvalPoint pt = EvalPoint::frequency(cplx(sigma, 0.0));
        samples.points.push_back(pt);
        samples.responses.push_back(eval_transfer(gt.model, pt));
    }
    samples.validate();
    return {std::move(gt), std::move(samples)};
}

GroundTruth gen_delay_rod(int n, double tau) {
    if (n < 3) throw InvalidArgument("delay rod needs order n >= 3");
    const double scale = double(n + 1) * double(n + 1);

    CMat a2 = CMat::Zero(n, n);  // -A of the realization, positive definite
    for (int i = 0; i < n; ++i) {
        a2(i, i) = 2.0 * scale;
        if (i + 1 < n) {
            a2(i, i + 1) = -scale;
            a2(i + 1, i) = -scale;
        }
    }

    StructuredModel m;
    m.alphas = {AlphaFunction::monomial(1), AlphaFunction::constant(),
                AlphaFunction::exp_delay(tau)};
    m.A = {CMat::Identity(n, n), std::move(a2), CMat(-0.25 * CMat::Identity(n, n))};
    const int mid = (n + 1) / 2 - 1;  // e_{ceil(n/2)}, zero-based
    m.B = CMat::Zero(n, 1);
    m.B(mid, 0) = 1.0;
    m.C = m.B.transpose();
    m.symmetric = true;

    GroundTruth gt;
    gt.model = std::move(m);
    gt.description = "delay heat rod, order " + std::to_string(n) + ", tau " + std::to_string(tau);
    gt.default_lo = 1e-1;
    gt.default_hi = 1e3;
    gt.default_train = 150;
    return gt;
}

GroundTruth gen_thermal_block(int grid) {
    if (grid < 4) throw InvalidArgument("thermal block needs grid >= 4");
    const int n = grid * grid;
    const double h = 1.0 / double(grid + 1);
    const double c = 1.0 / (h * h);

    // Quadrants in parameter order: (0,1/2)^2, (1/2,1)x(0,1/2), (1/2,1)^2,
    // (0,1/2)x(1/2,1); edge midpoints on an interface count as the lower side.
    auto region = [](double xm, double ym) {
        const bool right = xm >= 0.5, top = ym >= 0.5;
        if (!right && !top) return 0;
        if (right && !top) return 1;
        if (right && top) return 2;
        return 3;
    };
    auto node = [grid](int ix, int iy) { return iy * grid + ix; };

    std::vector<RMat> stiff(4, RMat::Zero(n, n));
    auto add_edge = [&](int r, int u, int v) {
        stiff[r](u, u) += c;
        if (v >= 0) {
            stiff[r](v, v) += c;
            stiff[r](u, v) -= c;
            stiff[r](v, u) -= c;
        }
    };

    for (int iy = 0; iy < grid; ++iy) {
        const double y = (iy + 1) * h;
        for (int ix = 0; ix < grid; ++ix) {
            const double x = (ix + 1) * h;
            // edge to the right neighbor (or right wall), midpoint x + h/2
            add_edge(region(x + 0.5 * h, y), node(ix, iy),
                     ix + 1 < grid ? node(ix + 1, iy) : -1);
            // edge to the top neighbor (or top wall), midpoint y + h/2
            add_edge(region(x, y + 0.5 * h), node(ix, iy),
                     iy + 1 < grid ? node(ix, iy + 1) : -1);
            // boundary edges on the left and bottom walls
            if (ix == 0) add_edge(region(0.5 * h, y), node(ix, iy), -1);
            if (iy == 0) add_edge(region(x, 0.5 * h), node(ix, iy), -1);
        }
    }

    StructuredModel m;
    m.alphas = {AlphaFunction::constant(), AlphaFunction::param_coordinate(0),
                AlphaFunction::param_coordinate(1), AlphaFunction::param_coordinate(2),
                AlphaFunction::param_coordinate(3)};
    m.A.push_back(CMat::Zero(n, n));
    for (auto& s : stiff) m.A.push_back(s.cast<cplx>());
    m.B = CMat::Ones(n, 1);
    m.C = CMat::Constant(1, n, 1.0 / double(n));
    m.symmetric = true;

    GroundTruth gt;
    gt.model = std::move(m);
    gt.description = "parametric thermal block, " + std::to_string(grid) + "x" +
                     std::to_string(grid) + " interior grid";
    gt.parametric = true;
    gt.default_lo = 0.1;
    gt.default_hi = 10.0;
    gt.default_train = 4;  // points per axis
    return gt;
}

SampleSet sample_frequencies(const GroundTruth& gt, int count, double lo, double hi,
                             bool conjugate_close) {
    if (count < 1) throw InvalidArgument("need at least one sample point");
    if (!(0 < lo && lo <= hi)) throw InvalidArgument("need 0 < lo <= hi");

    SampleSet samples;
    samples.conjugate_closed = conjugate_close;
    for (int j = 0; j < count; ++j) {
        const double t = count > 1 ? double(j) / double(count - 1) : 0.0;
        const double w = lo * std::pow(hi / lo, t);
        const EvalPoint pt = EvalPoint::frequency(cplx(0.0, w));
        const CMat H = eval_transfer(gt.model, pt);
        samples.points.push_back(pt);
        samples.responses.push_back(H);
        if (conjugate_close) {
            // Real system: the response at the conjugate point is the exact
            // conjugate; storing it as such keeps the closure invariant tight.
            samples.points.push_back(EvalPoint::frequency(cplx(0.0, -w)));
            samples.responses.push_back(H.conjugate());
        }
    }
    samples.validate();
    return samples;
}

SampleSet sample_parameters(const GroundTruth& gt, int points_per_axis, double lo, double hi) {
    if (points_per_axis < 2) throw InvalidArgument("need at least two points per axis");
    const Index d = gt.model.parameter_dim();
    if (d == 0) throw InvalidArgument("ground truth has no parameter dependence");

    Index total = 1;
    for (Index k = 0; k < d; ++k) total *= points_per_axis;

    SampleSet samples;
    samples.points.reserve(total);
    for (Index idx = 0; idx < total; ++idx) {
        RVec p(d);
        Index rest = idx;
        for (Index k = 0; k < d; ++k) {
            const Index step = rest % points_per_axis;
            rest /= points_per_axis;
            p[k] = lo + double(step) * (hi - lo) / double(points_per_axis - 1);
        }
        const EvalPoint pt = EvalPoint::parameter(std::move(p));
        samples.points.push_back(pt);
        samples.responses.push_back(eval_transfer(gt.model, pt));
    }
    samples.validate();
    return samples;
}

OracleResult intrusive_oracle(const GroundTruth& gt, const SampleSet& samples, double cond_cap) {
    const StructuredModel& full = gt.model;
    const Index n = full.order();
    const Index N = samples.size();
    const Index l = samples.outputs(), m = samples.inputs();
    const bool tangential = samples.has_directions();
    if ((l > 1 || m > 1) && !tangential)
        throw InvalidArgument("tangential directions are required for MIMO samples");
    if (full.outputs() != l || full.inputs() != m)
        throw DimensionMismatch("sample dimensions do not match the full-order model");

    OracleResult out;
    out.V.resize(n, N);
    out.W.resize(n, N);
    for (Index j = 0; j < N; ++j) {
        CMat K = CMat::Zero(n, n);
        for (std::size_t i = 0; i < full.A.size(); ++i)
            K += eval_alpha(full.alphas[i], samples.points[j]) * full.A[i];
        Eigen::PartialPivLU<CMat> lu(K);
        const double rc = lu.rcond();
        const double cond = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
        if (!(cond < cond_cap))
            throw SingularPencil("singular pencil at sample " + samples.points[j].describe(),
                                 cond);
        const CVec rb = tangential ? CVec(full.B * (*samples.right_dirs)[j]) : CVec(full.B.col(0));
        const CVec lc = tangential ? CVec(full.C.transpose() * (*samples.left_dirs)[j])
                                   : CVec(full.C.transpose().col(0));
        out.V.col(j) = lu.solve(rb);
        // Plain (not conjugate) transpose of the pencil for the left basis.
        Eigen::PartialPivLU<CMat> lut(CMat(K.transpose()));
        out.W.col(j) = lut.solve(lc);
    }

    StructuredModel proj;
    proj.alphas = full.alphas;
    proj.symmetric = false;
    proj.A.reserve(full.A.size());
    for (const auto& Ai : full.A) proj.A.push_back(out.W.transpose() * Ai * out.V);
    proj.B = out.W.transpose() * full.B;
    proj.C = full.C * out.V;
    out.projected = std::move(proj);
    return out;
}

}  // namespace strid
