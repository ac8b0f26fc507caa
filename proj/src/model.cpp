#include "strid/model.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace strid {

using nlohmann::json;

void StructuredModel::validate() const {
    if (alphas.empty() || A.empty())
        throw InvalidArgument("model needs at least one coefficient function and matrix");
    if (alphas.size() != A.size())
        throw DimensionMismatch("model has " + std::to_string(alphas.size()) +
                                " coefficient functions but " + std::to_string(A.size()) +
                                " matrices");
    for (const auto& f : alphas) f.validate();
    const Index r = A.front().rows();
    for (const auto& Ai : A) {
        if (Ai.rows() != Ai.cols() || Ai.rows() != r)
            throw DimensionMismatch("all A_i must be square with identical dimension");
    }
    if (B.rows() != r) throw DimensionMismatch("B must have as many rows as the model order");
    if (C.cols() != r) throw DimensionMismatch("C must have as many columns as the model order");
    if (symmetric) {
        for (std::size_t i = 0; i < A.size(); ++i) {
            const double denom = A[i].norm();
            const double dev = (A[i] - A[i].transpose()).norm();
            if (dev > 1e-12 * (denom > 0 ? denom : 1.0))
                throw InvalidArgument("symmetric flag set but A_" + std::to_string(i) +
                                      " deviates from symmetry by " + std::to_string(dev));
        }
    }
}

Index StructuredModel::parameter_dim() const {
    Index d = 0;
    for (const auto& f : alphas)
        if (f.kind == AlphaKind::ParamCoordinate) d = std::max<Index>(d, f.index + 1);
    return d;
}

bool StructuredModel::is_real(double tol) const {
    auto ok = [tol](const CMat& M) {
        const double scale = std::max(1.0, M.norm());
        return M.imag().norm() <= tol * scale;
    };
    for (const auto& Ai : A)
        if (!ok(Ai)) return false;
    return ok(B) && ok(C);
}

CMat eval_transfer(const StructuredModel& model, const EvalPoint& x, double cond_cap) {
    const Index r = model.order();
    CMat K = CMat::Zero(r, r);
    for (std::size_t i = 0; i < model.A.size(); ++i) K += eval_alpha(model.alphas[i], x) * model.A[i];

    Eigen::PartialPivLU<CMat> lu(K);
    const double rc = lu.rcond();
    const double cond = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(cond < cond_cap))
        throw SingularPencil("pencil singular or ill-conditioned at " + x.describe() +
                                 " (condition estimate " + std::to_string(cond) + ")",
                             cond);
    return model.C * lu.solve(model.B);
}

StructuredModel transpose_map(const StructuredModel& model) {
    StructuredModel out;
    out.alphas = model.alphas;
    out.symmetric = model.symmetric;
    out.A.reserve(model.A.size());
    for (const auto& Ai : model.A) out.A.push_back(Ai.transpose());
    out.B = model.C.transpose();
    out.C = model.B.transpose();
    return out;
}

namespace {

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw IoError("complex entry must be a [re, im] pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

json mat_to_json(const CMat& M) {
    json rows = json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(cplx_to_json(M(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat mat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw IoError("matrix must be a nonempty nested array");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j[0].size());
    CMat M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        if (static_cast<Index>(j[i].size()) != cols) throw IoError("ragged matrix rows");
        for (Index c = 0; c < cols; ++c) M(i, c) = cplx_from_json(j[i][c]);
    }
    return M;
}

std::string kind_name(AlphaKind k) {
    switch (k) {
        case AlphaKind::Monomial: return "monomial";
        case AlphaKind::ExpDelay: return "exp_delay";
        case AlphaKind::ParamCoordinate: return "param_coordinate";
        case AlphaKind::Constant: return "constant";
    }
    return "?";
}

AlphaKind kind_from_name(const std::string& s) {
    if (s == "monomial") return AlphaKind::Monomial;
    if (s == "exp_delay") return AlphaKind::ExpDelay;
    if (s == "param_coordinate") return AlphaKind::ParamCoordinate;
    if (s == "constant") return AlphaKind::Constant;
    throw IoError("unknown coefficient function kind '" + s + "'");
}

json alpha_to_json(const AlphaFunction& f) {
    json j;
    j["kind"] = kind_name(f.kind);
    switch (f.kind) {
        case AlphaKind::Monomial: j["power"] = f.power; break;
        case AlphaKind::ExpDelay: j["tau"] = f.tau; break;
        case AlphaKind::ParamCoordinate: j["index"] = f.index; break;
        case AlphaKind::Constant: break;
    }
    j["scale"] = f.scale;
    return j;
}

AlphaFunction alpha_from_json(const json& j) {
    AlphaFunction f;
    f.kind = kind_from_name(j.at("kind").get<std::string>());
    f.scale = j.value("scale", 1.0);
    switch (f.kind) {
        case AlphaKind::Monomial: f.power = j.at("power").get<int>(); break;
        case AlphaKind::ExpDelay: f.tau = j.at("tau").get<double>(); break;
        case AlphaKind::ParamCoordinate: f.index = j.at("index").get<int>(); break;
        case AlphaKind::Constant: break;
    }
    f.validate();
    return f;
}

}  // namespace

std::string model_to_json(const StructuredModel& model) {
    json j;
    json alphas = json::array();
    for (const auto& f : model.alphas) alphas.push_back(alpha_to_json(f));
    j["alphas"] = std::move(alphas);
    json mats = json::array();
    for (const auto& Ai : model.A) mats.push_back(mat_to_json(Ai));
    j["A"] = std::move(mats);
    j["B"] = mat_to_json(model.B);
    j["C"] = mat_to_json(model.C);
    j["symmetric"] = model.symmetric;
    return j.dump(1);
}

StructuredModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("model JSON parse failure: ") + e.what());
    }
    StructuredModel m;
    for (const auto& ja : j.at("alphas")) m.alphas.push_back(alpha_from_json(ja));
    for (const auto& jm : j.at("A")) m.A.push_back(mat_from_json(jm));
    m.B = mat_from_json(j.at("B"));
    m.C = mat_from_json(j.at("C"));
    m.symmetric = j.value("symmetric", false);
    m.validate();
    return m;
}

void save_model(const StructuredModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << model_to_json(model) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

StructuredModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json(text);
}

}  // namespace strid
