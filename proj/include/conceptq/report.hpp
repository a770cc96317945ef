#pragma once

#include "conceptq/dataset.hpp"
#include "conceptq/solver.hpp"

#include <optional>
#include <string>

#include <json.hpp>

namespace conceptq {

inline constexpr const char* kToolName = "conceptq";
inline constexpr const char* kToolVersion = "1.0.0";

struct DatasetInfo {
    std::string label_a;
    std::string label_b;
    std::string combination_label;
    std::size_t n = 0;
    ColumnSums raw_sums; // before normalization
    double normalization_tolerance = 0.0;

    bool operator==(const DatasetInfo& other) const;
};

struct SolveReport {
    std::string tool_version = kToolVersion;
    DatasetInfo dataset;
    FeasibilityReport feasibility;
    std::optional<InterferenceSolution> model;
};

/// Field order is fixed, so equal reports serialize to identical bytes.
/// Doubles are written in shortest round-trip form.
nlohmann::ordered_json to_json(const SolveReport& report);

/// Inverse of to_json. Derived columns (average, class) are checked against
/// the stored values they derive from. Throws ParseError on schema mismatch.
SolveReport report_from_json(const nlohmann::ordered_json& json);

bool same_report(const SolveReport& lhs, const SolveReport& rhs);

} // namespace conceptq
