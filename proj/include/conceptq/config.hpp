#pragma once

#include <filesystem>
#include <iosfwd>

namespace conceptq {

inline constexpr const char* kConfigEnvVar = "CONCEPT_INTERFERENCE_CONFIG";

// Acceptance thresholds. The regression bounds reflect 4-decimal rounding
// of the published table propagated through the model.
struct Thresholds {
    double orthogonality = 1e-9;
    double norm = 1e-9;
    double reconstruction = 1e-9;
    double lambda_regression = 5e-4;
    double phi_regression_deg = 0.5;
    double normalization_tolerance = 0.02;
};

/// `key = value` lines; '#' starts a comment. Unknown keys and non-positive
/// values are ValidationErrors.
Thresholds parse_thresholds(std::istream& in, Thresholds base = {});
Thresholds load_thresholds(const std::filesystem::path& path, Thresholds base = {});

/// Defaults, overridden by the file named in CONCEPT_INTERFERENCE_CONFIG if set.
Thresholds thresholds_from_environment();

} // namespace conceptq
