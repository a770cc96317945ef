#pragma once

#include "conceptq/config.hpp"
#include "conceptq/wavefield.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace conceptq {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,      // usage, I/O and validation failures
    kExitInfeasible = 2, // the data admit no model, or the model fails its checks
};

struct SolveOptions {
    std::filesystem::path input;
    std::optional<std::filesystem::path> output; // stdout when unset or "-"
    Thresholds thresholds;
};

struct RenderOptions {
    std::filesystem::path input;
    std::filesystem::path out_dir = ".";
    Point2 center_a = kDefaultCenterA;
    Point2 center_b = kDefaultCenterB;
    std::size_t resolution = kDefaultResolution;
    std::optional<Window> window;
    std::optional<double> phase_constant_deg;
    Thresholds thresholds;
};

struct ClassifyOptions {
    std::filesystem::path input;
    Thresholds thresholds;
};

struct VerifyOptions {
    std::filesystem::path report;
    Thresholds thresholds;
};

int run_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int run_render(const RenderOptions& options, std::ostream& out, std::ostream& err);
int run_classify(const ClassifyOptions& options, std::ostream& out, std::ostream& err);

/// Recomputes residuals from a solve report's state vectors and mu_ab
/// column, without re-solving, and compares them with the stored ones.
int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

} // namespace conceptq
