#include "conceptq/config.hpp"

#include "conceptq/error.hpp"
#include "conceptq/numfmt.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <string>

namespace conceptq {

Thresholds parse_thresholds(std::istream& in, Thresholds base) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = parse_double(line.substr(eq + 1));
        if (!value || !(*value > 0.0)) {
            throw ValidationError("config line " + std::to_string(line_no) + ": '" +
                                  std::string(key) + "' needs a positive number");
        }
        if (key == "orthogonality") {
            base.orthogonality = *value;
        } else if (key == "norm") {
            base.norm = *value;
        } else if (key == "reconstruction") {
            base.reconstruction = *value;
        } else if (key == "lambda_regression") {
            base.lambda_regression = *value;
        } else if (key == "phi_regression_deg") {
            base.phi_regression_deg = *value;
        } else if (key == "normalization_tolerance") {
            base.normalization_tolerance = *value;
        } else {
            throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" +
                                  std::string(key) + "'");
        }
    }
    return base;
}

Thresholds load_thresholds(const std::filesystem::path& path, Thresholds base) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path.string());
    return parse_thresholds(in, base);
}

Thresholds thresholds_from_environment() {
    const char* path = std::getenv(kConfigEnvVar);
    if (path == nullptr || *path == '\0') return {};
    return load_thresholds(path);
}

} // namespace conceptq
