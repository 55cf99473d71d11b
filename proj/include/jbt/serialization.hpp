#ifndef JBT_SERIALIZATION_HPP
#define JBT_SERIALIZATION_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "jbt/ideals.hpp"
#include "jbt/numrange.hpp"
#include "jbt/space.hpp"

namespace jbt {

/// Ordered JSON keeps key insertion order, so identical inputs serialize to
/// byte-identical documents.
using Json = nlohmann::ordered_json;

inline const char* kind_name(FactorSpec::Kind k) {
    switch (k) {
        case FactorSpec::Kind::Rectangular: return "rectangular";
        case FactorSpec::Kind::Symmetric: return "symmetric";
        case FactorSpec::Kind::Antisymmetric: return "antisymmetric";
        case FactorSpec::Kind::Diagonal: return "diagonal";
        case FactorSpec::Kind::Q3: return "q3";
        case FactorSpec::Kind::Subspace: return "subspace";
        case FactorSpec::Kind::DirectSum: return "direct_sum";
    }
    return "unknown";
}

/// Complex coordinate vectors serialize as flat interleaved [re, im, ...].
inline Json coords_to_json(const Vec& v) {
    Json arr = Json::array();
    for (int i = 0; i < v.size(); ++i) {
        arr.push_back(v(i).real());
        arr.push_back(v(i).imag());
    }
    return arr;
}

inline Vec coords_from_json(const Json& arr, int expected_dim = -1) {
    if (!arr.is_array() || arr.size() % 2 != 0)
        throw InvalidInput("coords: expected a flat [re, im, ...] array of even length");
    Vec v(static_cast<int>(arr.size() / 2));
    for (int i = 0; i < v.size(); ++i)
        v(i) = Complex(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
    if (expected_dim >= 0 && v.size() != expected_dim)
        throw InvalidInput("coords: dimension mismatch");
    return v;
}

/// Matrices serialize column-major interleaved, with shape alongside.
inline Json matrix_to_json(const Mat& m) {
    Json arr = Json::array();
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) {
            arr.push_back(m(i, j).real());
            arr.push_back(m(i, j).imag());
        }
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["data"] = arr;
    return out;
}

inline Mat matrix_from_json(const Json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw InvalidInput("matrix: expected {rows, cols, data}");
    int rows = j["rows"].get<int>(), cols = j["cols"].get<int>();
    const Json& arr = j["data"];
    if (rows < 0 || cols < 0 || !arr.is_array() ||
        static_cast<int>(arr.size()) != 2 * rows * cols)
        throw InvalidInput("matrix: data length does not match shape");
    Mat m(rows, cols);
    int k = 0;
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r, ++k)
            m(r, c) = Complex(arr[2 * k].get<double>(), arr[2 * k + 1].get<double>());
    return m;
}

inline Json spec_to_json(const FactorSpec& spec) {
    Json out;
    out["kind"] = kind_name(spec.kind);
    Json params = Json::object();
    switch (spec.kind) {
        case FactorSpec::Kind::Rectangular:
            params["p"] = spec.p;
            params["q"] = spec.q;
            break;
        case FactorSpec::Kind::Symmetric:
        case FactorSpec::Kind::Antisymmetric:
        case FactorSpec::Kind::Diagonal:
            params["n"] = spec.p;
            break;
        case FactorSpec::Kind::Q3:
            break;
        case FactorSpec::Kind::Subspace:
            params["parent"] = spec_to_json(*spec.parent);
            break;
        case FactorSpec::Kind::DirectSum: {
            Json summands = Json::array();
            for (const auto& s : spec.summands) summands.push_back(spec_to_json(s));
            params["summands"] = summands;
            break;
        }
    }
    out["params"] = params;
    if (spec.kind == FactorSpec::Kind::Subspace) {
        Json basis = Json::array();
        for (const Vec& v : spec.span) basis.push_back(coords_to_json(v));
        out["basis"] = basis;
    }
    return out;
}

inline FactorSpec spec_from_json(const Json& j) {
    if (!j.contains("kind")) throw InvalidInput("space spec: missing kind");
    std::string kind = j["kind"].get<std::string>();
    Json params = j.value("params", Json::object());
    auto need_int = [&](const char* key) {
        if (!params.contains(key)) throw InvalidInput(std::string("space spec: missing params.") + key);
        return params[key].get<int>();
    };
    if (kind == "rectangular") return FactorSpec::rectangular(need_int("p"), need_int("q"));
    if (kind == "symmetric") return FactorSpec::symmetric(need_int("n"));
    if (kind == "antisymmetric") return FactorSpec::antisymmetric(need_int("n"));
    if (kind == "diagonal") return FactorSpec::diagonal(need_int("n"));
    if (kind == "q3") return FactorSpec::q3();
    if (kind == "subspace") {
        if (!params.contains("parent")) throw InvalidInput("space spec: subspace needs params.parent");
        if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].empty())
            throw InvalidInput("space spec: subspace needs a nonempty basis");
        std::vector<Vec> span;
        for (const Json& v : j["basis"]) span.push_back(coords_from_json(v));
        return FactorSpec::subspace(spec_from_json(params["parent"]), span);
    }
    if (kind == "direct_sum") {
        if (!params.contains("summands") || !params["summands"].is_array() ||
            params["summands"].empty())
            throw InvalidInput("space spec: direct_sum needs params.summands");
        std::vector<FactorSpec> summands;
        for (const Json& s : params["summands"]) summands.push_back(spec_from_json(s));
        return FactorSpec::direct_sum(summands);
    }
    throw InvalidInput("space spec: unknown kind '" + kind + "'");
}

inline FactorSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open spec file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInput(std::string("spec file is not valid JSON: ") + e.what());
    }
    return spec_from_json(j);
}

inline Json operator_to_json(const RealLinearOperator& T) {
    Json out;
    out["kind"] = "matrix";
    out["A"] = matrix_to_json(T.A);
    if (!T.B.isZero(0.0)) out["B"] = matrix_to_json(T.B);
    return out;
}

/// Operator descriptions accepted by the CLI: named constructors over
/// element coordinates, or an explicit coordinate matrix pair.
inline RealLinearOperator operator_from_json(const SpaceRef& space, const Json& j) {
    if (!j.contains("kind")) throw InvalidInput("operator: missing kind");
    std::string kind = j["kind"].get<std::string>();
    auto elem_at = [&](const char* key) {
        if (!j.contains(key))
            throw InvalidInput(std::string("operator: missing element '") + key + "'");
        return Element{space, coords_from_json(j[key], space->dim)};
    };
    if (kind == "L") return L_op(elem_at("a"), elem_at("b"));
    if (kind == "Q") return Q_op(elem_at("a"), elem_at("b"));
    if (kind == "M") return jordan_mult_op(elem_at("b"), elem_at("e"));
    if (kind == "left") return left_mult_op(elem_at("b"));
    if (kind == "right") return right_mult_op(elem_at("b"));
    if (kind == "T") {
        Element a = elem_at("a");
        if (j.contains("b")) return build_T_operator(a, elem_at("b")).T;
        auto cert = find_2nilpotent(a);
        if (!cert)
            throw InvalidInput("operator: T construction needs a non-associative inner ideal");
        return build_T_operator(a, (1.0 / cert->norm) * cert->b).T;
    }
    if (kind == "matrix") {
        if (!j.contains("A")) throw InvalidInput("operator: matrix kind needs A");
        Mat A = matrix_from_json(j["A"]);
        Mat B = j.contains("B") ? matrix_from_json(j["B"]) : Mat();
        return operator_from_matrix(space, A, B);
    }
    throw InvalidInput("operator: unknown kind '" + kind + "'");
}

inline Json radius_to_json(const RadiusEstimate& est, std::uint64_t seed, OptimizerBudget budget) {
    Json out;
    out["schema_version"] = 1;
    out["value"] = est.value;
    out["theta"] = est.theta;
    out["witness"] = coords_to_json(est.witness.x);
    out["starts_used"] = est.starts_used;
    out["converged"] = est.converged;
    out["tolerance"] = est.tolerance;
    if (std::isfinite(est.upper_bound)) out["upper_bound"] = est.upper_bound;
    out["seed"] = seed;
    out["budget"] = Json{{"starts", budget.starts}, {"steps", budget.steps}};
    return out;
}

inline Json index_to_json(const IndexEstimate& est, std::uint64_t seed, OptimizerBudget budget) {
    Json out;
    out["schema_version"] = 1;
    out["value"] = est.value;
    out["witness_kind"] = est.witness_kind;
    out["witness"] = operator_to_json(est.witness);
    out["operators_tested"] = est.operators_tested;
    out["ratios"] = est.ratios;
    out["seed"] = seed;
    out["budget"] = Json{{"starts", budget.starts}, {"steps", budget.steps}};
    return out;
}

inline Json report_to_json(const CommutativityReport& rep) {
    Json out;
    out["schema_version"] = 1;
    out["space"] = spec_to_json(rep.space->spec);
    out["commutator_defect"] = rep.commutator_defect;
    out["tripotents_sampled"] = rep.tripotents_sampled;
    out["complete_sampled"] = rep.complete_sampled;
    out["generators_checked"] = rep.generators_checked;
    Json items = Json::array();
    for (const ItemReport* item : rep.items()) {
        Json it;
        it["id"] = item->id;
        it["holds"] = item->holds;
        it["note"] = item->note;
        items.push_back(it);
    }
    out["items"] = items;
    if (rep.nilpotent) {
        Json n;
        n["b"] = coords_to_json(rep.nilpotent->b.x);
        n["residual"] = rep.nilpotent->residual;
        n["norm"] = rep.nilpotent->norm;
        out["nilpotent"] = n;
    } else {
        out["nilpotent"] = nullptr;
    }
    return out;
}

/// CSV with fixed shortest-round-trip formatting; byte-stable per input.
inline std::string range_to_csv(const std::vector<Complex>& pts) {
    std::string out = "re,im\n";
    char buf[64];
    for (Complex p : pts) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.real(), p.imag());
        out += buf;
    }
    return out;
}

}  // namespace jbt

#endif
