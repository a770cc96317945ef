#include "conceptq/app.hpp"

#include "conceptq/dataset.hpp"
#include "conceptq/error.hpp"
#include "conceptq/raster_io.hpp"
#include "conceptq/report.hpp"
#include "conceptq/solver.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

namespace conceptq {

namespace {

struct PreparedTable {
    TypicalityTable normalized;
    DatasetInfo info;
};

PreparedTable prepare(const std::filesystem::path& input, const Thresholds& thresholds) {
    const auto raw = load_table(input);
    PreparedTable prepared{validate_and_normalize(raw, thresholds.normalization_tolerance), {}};
    prepared.info = {raw.label_a, raw.label_b, raw.combination_label, raw.size(), column_sums(raw),
                     thresholds.normalization_tolerance};
    return prepared;
}

bool within_thresholds(const VerificationReport& r, const Thresholds& t) {
    return r.orthogonality_modulus <= t.orthogonality && r.norm_a_error <= t.norm &&
           r.norm_b_error <= t.norm && r.max_reconstruction_error <= t.reconstruction;
}

void describe_residuals(std::ostream& err, const VerificationReport& r) {
    fmt::print(err,
               "residuals: |<A|B>| = {:.3e}, norm errors {:.3e} / {:.3e}, max reconstruction "
               "error {:.3e}\n",
               r.orthogonality_modulus, r.norm_a_error, r.norm_b_error, r.max_reconstruction_error);
}

void report_infeasible(std::ostream& err, const FeasibilityReport& f) {
    err << "model infeasible:\n" << f.describe();
}

// Runs body, mapping library failures onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ModelInfeasible& e) {
        err << "model infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

void write_file(const std::filesystem::path& path, const auto& writer) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path.string());
    writer(file);
    if (!file) throw Error("write failed for " + path.string());
}

} // namespace

int run_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto prepared = prepare(options.input, options.thresholds);
        auto result = solve(prepared.normalized);

        SolveReport report;
        report.dataset = prepared.info;
        report.feasibility = result.feasibility;
        report.model = std::move(result.solution);
        const std::string text = to_json(report).dump(2) + "\n";

        if (options.output && options.output->string() != "-") {
            write_file(*options.output, [&](std::ostream& file) { file << text; });
        } else {
            out << text;
        }

        if (!report.model) {
            report_infeasible(err, report.feasibility);
            return static_cast<int>(kExitInfeasible);
        }
        if (!within_thresholds(report.model->residuals, options.thresholds)) {
            err << "model residuals exceed thresholds\n";
            describe_residuals(err, report.model->residuals);
            return static_cast<int>(kExitInfeasible);
        }
        return static_cast<int>(kExitOk);
    });
}

int run_render(const RenderOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (options.resolution < 2) throw ValidationError("--resolution must be at least 2");
        const auto prepared = prepare(options.input, options.thresholds);
        const auto result = solve(prepared.normalized);
        if (!result.solution) {
            report_infeasible(err, result.feasibility);
            return static_cast<int>(kExitInfeasible);
        }
        const auto& solution = *result.solution;

        const auto fields = fit_gaussian_fields(prepared.normalized, options.center_a, options.center_b);
        const auto placements = place_exemplars(prepared.normalized, fields);
        std::vector<double> phi;
        for (const auto& e : solution.exemplars) phi.push_back(e.phi_deg);
        const auto phase = options.phase_constant_deg ? PhaseField::constant(*options.phase_constant_deg)
                                                      : interpolate_phase(placements, phi);
        const auto window = options.window.value_or(default_window(placements, fields));
        const auto grids = render_grids(fields, phase, window, options.resolution, options.resolution);

        std::filesystem::create_directories(options.out_dir);
        const std::pair<const char*, const RasterGrid*> outputs[] = {
            {"a_only", &grids.a_only},
            {"b_only", &grids.b_only},
            {"classical", &grids.classical},
            {"interference", &grids.interference},
        };
        for (const auto& [name, grid] : outputs) {
            const auto base = options.out_dir / name;
            write_file(base.string() + ".csv", [&](std::ostream& f) { write_grid_csv(f, *grid); });
            write_file(base.string() + ".pgm", [&](std::ostream& f) { write_pgm(f, *grid); });
            fmt::print(out, "wrote {0}.csv {0}.pgm\n", base.string());
        }
        write_file(options.out_dir / "placements.csv",
                   [&](std::ostream& f) { write_placements_csv(f, placements); });
        fmt::print(out, "wrote {}\n", (options.out_dir / "placements.csv").string());

        for (const auto& p : placements) {
            if (p.residual > 0.0) {
                fmt::print(err, "note: {} ({}) placed on the center line, level curves miss by {:.4f}\n",
                           p.name, p.index, p.residual);
            }
        }
        fmt::print(out, "phase: {}, window [{}, {}] x [{}, {}], {}x{} pixels\n", phase.rule(),
                   window.x_min, window.x_max, window.y_min, window.y_max, options.resolution,
                   options.resolution);
        return static_cast<int>(kExitOk);
    });
}

int run_classify(const ClassifyOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto prepared = prepare(options.input, options.thresholds);
        const auto result = solve(prepared.normalized);
        if (!result.solution) {
            report_infeasible(err, result.feasibility);
            return static_cast<int>(kExitInfeasible);
        }
        const auto& solution = *result.solution;
        auto rows = classify_exemplars(solution);
        std::stable_sort(rows.begin(), rows.end(), [](const Classification& l, const Classification& r) {
            return std::abs(l.strength) > std::abs(r.strength);
        });

        std::map<std::string, std::vector<std::string>> notes_by_name;
        for (const auto& note : prepared.normalized.notes) notes_by_name[note.exemplar].push_back(note.text);

        fmt::print(out, "{}: {} exemplars, plane exemplar m = {} ({}), c_m = {:.4f}\n",
                   prepared.info.combination_label, solution.exemplars.size(), solution.m,
                   solution.at(solution.m).name, solution.c_m);
        std::vector<std::string> footnotes;
        for (auto cls : {InterferenceClass::Weakening, InterferenceClass::Strengthening,
                         InterferenceClass::Classical}) {
            const auto count = std::count_if(rows.begin(), rows.end(),
                                             [&](const Classification& c) { return c.cls == cls; });
            if (count == 0 && cls == InterferenceClass::Classical) continue;
            fmt::print(out, "\n{} ({})\n", to_string(cls), count);
            for (const auto& c : rows) {
                if (c.cls != cls) continue;
                std::string marker;
                if (const auto it = notes_by_name.find(c.name); it != notes_by_name.end()) {
                    for (const auto& text : it->second) {
                        footnotes.push_back(fmt::format("[{}] {}: {}", footnotes.size() + 1, c.name, text));
                        marker += fmt::format("[{}]", footnotes.size());
                    }
                }
                const auto& e = solution.at(c.index);
                fmt::print(out, "  {:>2}  {:<18} deviation {:+.4f}  phi {:+9.4f}  strength {:+.4f}{}\n",
                           c.index, c.name, c.deviation, e.phi_deg, c.strength,
                           marker.empty() ? "" : " " + marker);
            }
        }
        if (!footnotes.empty()) {
            out << "\nNotes\n";
            for (const auto& f : footnotes) out << "  " << f << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::ifstream in(options.report);
        if (!in) throw Error("cannot open " + options.report.string());
        nlohmann::ordered_json json;
        try {
            json = nlohmann::ordered_json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(1, std::string("invalid JSON: ") + e.what());
        }
        const auto report = report_from_json(json);
        if (!report.model) {
            report_infeasible(err, report.feasibility);
            return static_cast<int>(kExitInfeasible);
        }
        const auto& model = *report.model;
        std::vector<double> mu_ab;
        for (const auto& e : model.exemplars) mu_ab.push_back(e.mu_ab);
        const auto recomputed =
            verify_state_vectors(model.vector_a, model.vector_b, model.layout(), mu_ab);

        const bool identical = recomputed == model.residuals;
        const bool within = within_thresholds(recomputed, options.thresholds);
        const auto residual_json = [](const VerificationReport& r) {
            return nlohmann::ordered_json{{"orthogonality_modulus", r.orthogonality_modulus},
                                          {"norm_a_error", r.norm_a_error},
                                          {"norm_b_error", r.norm_b_error},
                                          {"max_reconstruction_error", r.max_reconstruction_error}};
        };
        out << nlohmann::ordered_json{{"stored", residual_json(model.residuals)},
                                      {"recomputed", residual_json(recomputed)},
                                      {"identical", identical},
                                      {"within_thresholds", within}}
                   .dump(2)
            << '\n';
        if (!identical) err << "recomputed residuals differ from the stored ones\n";
        if (!within) {
            err << "residuals exceed thresholds\n";
            describe_residuals(err, recomputed);
        }
        return static_cast<int>(identical && within ? kExitOk : kExitInfeasible);
    });
}

} // namespace conceptq
