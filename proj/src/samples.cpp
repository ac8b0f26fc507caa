#include "strid/samples.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "strid/errors.hpp"

namespace strid {

using nlohmann::json;

void SampleSet::validate() const {
    if (points.empty()) throw InvalidArgument("sample set must contain at least one point");
    if (points.size() != responses.size())
        throw DimensionMismatch("points and responses differ in length");
    const Index l = outputs(), m = inputs();
    for (const auto& H : responses)
        if (H.rows() != l || H.cols() != m)
            throw DimensionMismatch("all responses must share dimensions l x m");
    if (right_dirs.has_value() != left_dirs.has_value())
        throw InvalidArgument("tangential direction lists must both be present or both absent");
    if (right_dirs) {
        if (right_dirs->size() != points.size() || left_dirs->size() != points.size())
            throw DimensionMismatch("direction lists must have one entry per sample");
        for (std::size_t i = 0; i < right_dirs->size(); ++i) {
            if ((*right_dirs)[i].size() != m || (*left_dirs)[i].size() != l)
                throw DimensionMismatch("direction dimensions must match the responses");
            if (std::abs((*right_dirs)[i].norm() - 1.0) > 1e-8 ||
                std::abs((*left_dirs)[i].norm() - 1.0) > 1e-8)
                throw InvalidArgument("tangential directions must have unit 2-norm");
        }
    }
    if (conjugate_closed) {
        const auto perm = conjugate_permutation();
        for (std::size_t j = 0; j < points.size(); ++j) {
            const CMat expected = responses[perm[j]].conjugate();
            const double scale = std::max(1.0, responses[j].norm());
            if ((responses[j] - expected).norm() > 1e-12 * scale)
                throw InvalidArgument("conjugate closure violated: H(conj(sigma)) != conj(H) at " +
                                      points[j].describe());
        }
    }
}

bool SampleSet::all_real() const {
    for (const auto& pt : points)
        if (pt.is_frequency() && pt.s().imag() != 0.0) return false;
    for (const auto& H : responses)
        if (H.imag().norm() != 0.0) return false;
    if (right_dirs)
        for (const auto& b : *right_dirs)
            if (b.imag().norm() != 0.0) return false;
    if (left_dirs)
        for (const auto& c : *left_dirs)
            if (c.imag().norm() != 0.0) return false;
    return true;
}

std::vector<Index> SampleSet::conjugate_permutation(double tol) const {
    std::vector<Index> perm(points.size(), -1);
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (!points[j].is_frequency())
            throw PairingError("conjugate pairing needs frequency points, got " +
                               points[j].describe());
        const cplx target = std::conj(points[j].s());
        const double scale = std::max(1.0, std::abs(target));
        Index found = -1;
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (std::abs(points[k].s() - target) <= tol * scale) {
                found = static_cast<Index>(k);
                break;
            }
        }
        if (found < 0)
            throw PairingError("no conjugate partner for point " + points[j].describe());
        perm[j] = found;
    }
    return perm;
}

std::pair<SampleSet, double> normalize_responses(const SampleSet& samples) {
    double peak = 0.0;
    for (const auto& H : samples.responses)
        peak = std::max(peak, H.cwiseAbs().maxCoeff());
    if (peak == 0.0) return {samples, 1.0};
    SampleSet out = samples;
    for (auto& H : out.responses) H /= peak;
    return {out, peak};
}

SampleSet denormalize_responses(const SampleSet& samples, double factor) {
    SampleSet out = samples;
    for (auto& H : out.responses) H *= factor;
    return out;
}

void fill_default_directions(SampleSet& samples, bool random, unsigned seed) {
    if (samples.has_directions()) return;
    const Index l = samples.outputs(), m = samples.inputs();
    const Index n = samples.size();
    std::vector<CVec> right(n), left(n);
    if (!random) {
        for (Index i = 0; i < n; ++i) {
            right[i] = CVec::Unit(m, i % m);
            left[i] = CVec::Unit(l, i % l);
        }
    } else {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        auto unit = [&](Index dim) {
            CVec v(dim);
            for (Index k = 0; k < dim; ++k) v[k] = cplx(gauss(rng), gauss(rng));
            return CVec(v / v.norm());
        };
        for (Index i = 0; i < n; ++i) {
            right[i] = unit(m);
            left[i] = unit(l);
        }
    }
    samples.right_dirs = std::move(right);
    samples.left_dirs = std::move(left);
}

namespace {

json cvec_to_json(const CVec& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(json::array({v[i].real(), v[i].imag()}));
    return a;
}

CVec cvec_from_json(const json& j) {
    CVec v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) {
        const auto& e = j[i];
        if (!e.is_array() || e.size() != 2) throw IoError("direction entry must be [re, im]");
        v[i] = cplx(e[0].get<double>(), e[1].get<double>());
    }
    return v;
}

json response_to_json(const CMat& H) {
    json rows = json::array();
    for (Index i = 0; i < H.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < H.cols(); ++j)
            row.push_back(json::array({H(i, j).real(), H(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat response_from_json(const json& j, Index l, Index m) {
    if (static_cast<Index>(j.size()) != l) throw IoError("response has wrong row count");
    CMat H(l, m);
    for (Index i = 0; i < l; ++i) {
        if (static_cast<Index>(j[i].size()) != m) throw IoError("response has wrong column count");
        for (Index c = 0; c < m; ++c) {
            const auto& e = j[i][c];
            if (!e.is_array() || e.size() != 2) throw IoError("response entry must be [re, im]");
            H(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return H;
}

json point_to_json(const EvalPoint& pt) {
    json j;
    if (pt.is_frequency()) {
        j["s"] = json::array({pt.s().real(), pt.s().imag()});
    } else {
        json p = json::array();
        for (Index i = 0; i < pt.p().size(); ++i) p.push_back(pt.p()[i]);
        j["p"] = std::move(p);
    }
    return j;
}

EvalPoint point_from_json(const json& j) {
    if (j.contains("s")) {
        const auto& s = j["s"];
        if (!s.is_array() || s.size() != 2) throw IoError("point 's' must be [re, im]");
        return EvalPoint::frequency(cplx(s[0].get<double>(), s[1].get<double>()));
    }
    if (j.contains("p")) {
        const auto& p = j["p"];
        RVec v(static_cast<Index>(p.size()));
        for (Index i = 0; i < v.size(); ++i) v[i] = p[i].get<double>();
        return EvalPoint::parameter(std::move(v));
    }
    throw IoError("point must contain 's' or 'p'");
}

}  // namespace

std::string samples_to_json(const SampleSet& samples) {
    json j;
    j["l"] = samples.outputs();
    j["m"] = samples.inputs();
    j["conjugate_closed"] = samples.conjugate_closed;
    json arr = json::array();
    for (Index i = 0; i < samples.size(); ++i) {
        json e;
        e["point"] = point_to_json(samples.points[i]);
        e["H"] = response_to_json(samples.responses[i]);
        if (samples.right_dirs) e["b"] = cvec_to_json((*samples.right_dirs)[i]);
        if (samples.left_dirs) e["c"] = cvec_to_json((*samples.left_dirs)[i]);
        arr.push_back(std::move(e));
    }
    j["samples"] = std::move(arr);
    return j.dump(1);
}

SampleSet samples_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("sample JSON parse failure: ") + e.what());
    }
    SampleSet s;
    const Index l = j.at("l").get<Index>();
    const Index m = j.at("m").get<Index>();
    s.conjugate_closed = j.value("conjugate_closed", false);
    bool any_dirs = false;
    for (const auto& e : j.at("samples")) {
        s.points.push_back(point_from_json(e.at("point")));
        s.responses.push_back(response_from_json(e.at("H"), l, m));
        if (e.contains("b") || e.contains("c")) any_dirs = true;
    }
    if (any_dirs) {
        std::vector<CVec> right, left;
        for (const auto& e : j.at("samples")) {
            if (!e.contains("b") || !e.contains("c"))
                throw IoError("either every sample carries directions or none does");
            right.push_back(cvec_from_json(e.at("b")));
            left.push_back(cvec_from_json(e.at("c")));
        }
        s.right_dirs = std::move(right);
        s.left_dirs = std::move(left);
    }
    s.validate();
    return s;
}

void save_samples(const SampleSet& samples, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << samples_to_json(samples) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

SampleSet load_samples(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return samples_from_json(text);
}

}  // namespace strid
