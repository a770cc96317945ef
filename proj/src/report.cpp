#include "conceptq/report.hpp"

#include "conceptq/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace conceptq {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw ParseError(1, "report schema: " + what);
}

const Json& field(const Json& object, const char* key) {
    if (!object.is_object() || !object.contains(key)) schema_error(std::string("missing '") + key + "'");
    return object.at(key);
}

template <typename T>
T get(const Json& object, const char* key) {
    try {
        return field(object, key).get<T>();
    } catch (const nlohmann::json::exception&) {
        schema_error(std::string("bad type for '") + key + "'");
    }
}

Json vector_to_json(const StateVector& v) {
    Json out = Json::array();
    for (const auto& a : v.amplitudes()) out.push_back(Json{{"re", a.real()}, {"im", a.imag()}});
    return out;
}

StateVector vector_from_json(const Json& array) {
    if (!array.is_array()) schema_error("state vector must be an array");
    std::vector<Complex> amplitudes;
    for (const auto& entry : array) amplitudes.emplace_back(get<double>(entry, "re"), get<double>(entry, "im"));
    return StateVector(std::move(amplitudes));
}

std::string display_deg(double degrees) { return fmt::format("{:.4f}", degrees); }

} // namespace

bool DatasetInfo::operator==(const DatasetInfo& other) const {
    return label_a == other.label_a && label_b == other.label_b &&
           combination_label == other.combination_label && n == other.n &&
           raw_sums.mu_a == other.raw_sums.mu_a && raw_sums.mu_b == other.raw_sums.mu_b &&
           raw_sums.mu_ab == other.raw_sums.mu_ab &&
           normalization_tolerance == other.normalization_tolerance;
}

Json to_json(const SolveReport& report) {
    Json out;
    out["tool"] = Json{{"name", kToolName}, {"version", report.tool_version}};

    const auto& d = report.dataset;
    out["dataset"] = Json{
        {"label_a", d.label_a},
        {"label_b", d.label_b},
        {"combination_label", d.combination_label},
        {"n", d.n},
        {"column_sums_raw", Json{{"mu_a", d.raw_sums.mu_a}, {"mu_b", d.raw_sums.mu_b}, {"mu_ab", d.raw_sums.mu_ab}}},
        {"normalization_tolerance", d.normalization_tolerance},
    };

    const auto& f = report.feasibility;
    Json infeasible = Json::array();
    for (const auto& row : f.infeasible_exemplars) {
        infeasible.push_back(Json{{"index", row.index}, {"name", row.name}, {"radicand", row.radicand}});
    }
    out["feasible"] = f.feasible();
    out["feasibility"] = Json{
        {"infeasible_exemplars", infeasible},
        {"cm_violation", f.cm_violation ? Json(*f.cm_violation) : Json(nullptr)},
        {"cm_degenerate", f.cm_degenerate},
        {"phase_violation", f.phase_violation ? Json(*f.phase_violation) : Json(nullptr)},
        {"diagnosis", f.describe()},
    };

    if (!report.model) {
        out["model"] = nullptr;
        return out;
    }
    const auto& s = *report.model;
    Json rows = Json::array();
    for (const auto& e : s.exemplars) {
        rows.push_back(Json{
            {"index", e.index},
            {"name", e.name},
            {"mu_a", e.mu_a},
            {"mu_b", e.mu_b},
            {"mu_ab", e.mu_ab},
            {"average", 0.5 * (e.mu_a + e.mu_b)},
            {"deviation", e.deviation},
            {"lambda", e.lambda},
            {"phi_deg", e.phi_deg},
            {"phi_display", display_deg(e.phi_deg)},
            {"beta_deg", e.beta_deg},
            {"beta_display", display_deg(e.beta_deg)},
            {"c", e.c},
            {"class", to_string(classify_deviation(e.deviation))},
        });
    }
    const auto& r = s.residuals;
    out["model"] = Json{
        {"m", s.m},
        {"m_name", s.at(s.m).name},
        {"c_m", s.c_m},
        {"exemplars", rows},
        {"vector_a", vector_to_json(s.vector_a)},
        {"vector_b", vector_to_json(s.vector_b)},
        {"residuals", Json{{"orthogonality_modulus", r.orthogonality_modulus},
                           {"norm_a_error", r.norm_a_error},
                           {"norm_b_error", r.norm_b_error},
                           {"max_reconstruction_error", r.max_reconstruction_error}}},
    };
    return out;
}

SolveReport report_from_json(const Json& json) {
    SolveReport report;
    const auto& tool = field(json, "tool");
    if (get<std::string>(tool, "name") != kToolName) schema_error("not a conceptq report");
    report.tool_version = get<std::string>(tool, "version");

    const auto& d = field(json, "dataset");
    report.dataset.label_a = get<std::string>(d, "label_a");
    report.dataset.label_b = get<std::string>(d, "label_b");
    report.dataset.combination_label = get<std::string>(d, "combination_label");
    report.dataset.n = get<std::size_t>(d, "n");
    const auto& sums = field(d, "column_sums_raw");
    report.dataset.raw_sums = {get<double>(sums, "mu_a"), get<double>(sums, "mu_b"), get<double>(sums, "mu_ab")};
    report.dataset.normalization_tolerance = get<double>(d, "normalization_tolerance");

    const auto& f = field(json, "feasibility");
    for (const auto& row : field(f, "infeasible_exemplars")) {
        report.feasibility.infeasible_exemplars.push_back(
            {get<std::size_t>(row, "index"), get<std::string>(row, "name"), get<double>(row, "radicand")});
    }
    if (const auto& v = field(f, "cm_violation"); !v.is_null()) report.feasibility.cm_violation = get<double>(f, "cm_violation");
    report.feasibility.cm_degenerate = get<bool>(f, "cm_degenerate");
    if (const auto& v = field(f, "phase_violation"); !v.is_null()) {
        report.feasibility.phase_violation = get<std::string>(f, "phase_violation");
    }
    if (get<bool>(json, "feasible") != report.feasibility.feasible()) schema_error("'feasible' disagrees with feasibility");

    const auto& model = field(json, "model");
    if (model.is_null()) return report;

    InterferenceSolution s;
    s.m = get<std::size_t>(model, "m");
    s.c_m = get<double>(model, "c_m");
    for (const auto& row : field(model, "exemplars")) {
        ExemplarSolution e;
        e.index = get<std::size_t>(row, "index");
        e.name = get<std::string>(row, "name");
        e.mu_a = get<double>(row, "mu_a");
        e.mu_b = get<double>(row, "mu_b");
        e.mu_ab = get<double>(row, "mu_ab");
        e.deviation = get<double>(row, "deviation");
        e.lambda = get<double>(row, "lambda");
        e.phi_deg = get<double>(row, "phi_deg");
        e.beta_deg = get<double>(row, "beta_deg");
        e.c = get<double>(row, "c");
        if (get<double>(row, "average") != 0.5 * (e.mu_a + e.mu_b)) schema_error("average inconsistent for " + e.name);
        if (get<std::string>(row, "class") != to_string(classify_deviation(e.deviation))) schema_error("class inconsistent for " + e.name);
        if (e.index != s.exemplars.size() + 1) schema_error("exemplar indices must be contiguous");
        s.exemplars.push_back(std::move(e));
    }
    if (s.exemplars.size() != report.dataset.n) schema_error("exemplar count disagrees with n");
    if (s.m == 0 || s.m > s.exemplars.size()) schema_error("m out of range");
    s.vector_a = vector_from_json(field(model, "vector_a"));
    s.vector_b = vector_from_json(field(model, "vector_b"));
    if (s.vector_a.size() != s.exemplars.size() + 1 || s.vector_b.size() != s.exemplars.size() + 1) {
        schema_error("state vectors must have n + 1 coordinates");
    }
    const auto& r = field(model, "residuals");
    s.residuals = {get<double>(r, "orthogonality_modulus"), get<double>(r, "norm_a_error"),
                   get<double>(r, "norm_b_error"), get<double>(r, "max_reconstruction_error")};
    report.model = std::move(s);
    return report;
}

bool same_report(const SolveReport& lhs, const SolveReport& rhs) {
    const auto& fl = lhs.feasibility;
    const auto& fr = rhs.feasibility;
    if (fl.infeasible_exemplars.size() != fr.infeasible_exemplars.size()) return false;
    for (std::size_t i = 0; i < fl.infeasible_exemplars.size(); ++i) {
        const auto& a = fl.infeasible_exemplars[i];
        const auto& b = fr.infeasible_exemplars[i];
        if (a.index != b.index || a.name != b.name || a.radicand != b.radicand) return false;
    }
    return lhs.tool_version == rhs.tool_version && lhs.dataset == rhs.dataset &&
           fl.cm_violation == fr.cm_violation && fl.cm_degenerate == fr.cm_degenerate &&
           fl.phase_violation == fr.phase_violation && lhs.model == rhs.model;
}

} // namespace conceptq
