// conceptq: fit the two-concept interference model to typicality data and
// render its intensity landscapes.

#include "conceptq/app.hpp"
#include "conceptq/config.hpp"
#include "conceptq/numfmt.hpp"
#include "conceptq/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* flag) {
    std::vector<double> values;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        const auto value = conceptq::parse_double(rest.substr(0, comma));
        if (!value) break;
        values.push_back(*value);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (values.size() != count) {
        throw CLI::ValidationError(flag, "expected " + std::to_string(count) + " comma-separated numbers");
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum interference model for two-concept typicality data"};
    app.set_version_flag("--version", std::string(conceptq::kToolVersion));
    app.require_subcommand(1);

    double tolerance = conceptq::kDefaultNormalizationTolerance;
    bool tolerance_given = false;
    const auto add_tolerance = [&](CLI::App* cmd) {
        cmd->add_option("--tolerance", tolerance, "Allowed |column sum - 1| before normalizing")
            ->check(CLI::PositiveNumber)
            ->each([&](const std::string&) { tolerance_given = true; });
    };

    std::string input;
    std::string output;

    auto* solve = app.add_subcommand("solve", "Fit the model and write a JSON report");
    solve->add_option("input", input, "Typicality CSV")->required();
    solve->add_option("-o,--output", output, "Report path (default stdout)");
    add_tolerance(solve);

    auto* render = app.add_subcommand("render", "Render A, B, classical and interference rasters");
    std::string centers;
    std::string window;
    std::size_t resolution = conceptq::kDefaultResolution;
    double phase_constant = 0.0;
    render->add_option("input", input, "Typicality CSV")->required();
    render->add_option("-o,--output", output, "Output directory")->required();
    render->add_option("--centers", centers, "x1,y1,x2,y2 field centers (default 0,0,10,4)");
    render->add_option("--resolution", resolution, "Pixels per side (default 400)");
    render->add_option("--window", window, "xmin,xmax,ymin,ymax world window");
    auto* phase_opt = render->add_option("--phase-constant", phase_constant,
                                         "Use this phase (degrees) everywhere instead of interpolating");
    add_tolerance(render);

    auto* classify = app.add_subcommand("classify", "List weakening and strengthening exemplars");
    classify->add_option("input", input, "Typicality CSV")->required();
    add_tolerance(classify);

    auto* verify = app.add_subcommand("verify", "Recheck the residuals stored in a solve report");
    verify->add_option("report", input, "JSON report written by solve")->required();

    conceptq::Thresholds thresholds;
    conceptq::RenderOptions render_options;
    try {
        app.parse(argc, argv);
        thresholds = conceptq::thresholds_from_environment();
        if (tolerance_given) thresholds.normalization_tolerance = tolerance;
        if (*render) {
            if (!centers.empty()) {
                const auto c = parse_list(centers, 4, "--centers");
                render_options.center_a = {c[0], c[1]};
                render_options.center_b = {c[2], c[3]};
            }
            if (!window.empty()) {
                const auto w = parse_list(window, 4, "--window");
                render_options.window = conceptq::Window{w[0], w[1], w[2], w[3]};
            }
        }
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return conceptq::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return conceptq::kExitUsage;
    }

    if (*solve) {
        conceptq::SolveOptions options{input, std::nullopt, thresholds};
        if (!output.empty()) options.output = output;
        return conceptq::run_solve(options, std::cout, std::cerr);
    }
    if (*render) {
        render_options.input = input;
        render_options.out_dir = output;
        render_options.resolution = resolution;
        if (*phase_opt) render_options.phase_constant_deg = phase_constant;
        render_options.thresholds = thresholds;
        return conceptq::run_render(render_options, std::cout, std::cerr);
    }
    if (*classify) return conceptq::run_classify({input, thresholds}, std::cout, std::cerr);
    return conceptq::run_verify({input, thresholds}, std::cout, std::cerr);
}
