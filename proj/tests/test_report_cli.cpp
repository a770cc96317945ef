#include "conceptq/app.hpp"
#include "conceptq/config.hpp"
#include "conceptq/error.hpp"
#include "conceptq/report.hpp"
#include "conceptq/solver.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace conceptq;
namespace fs = std::filesystem;

namespace {

const fs::path kBundled = CONCEPTQ_DATA_DIR "/fruits_vegetables.csv";

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("conceptq_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

SolveReport bundled_report() {
    const auto raw = fruits_vegetables();
    SolveReport report;
    report.dataset = {raw.label_a, raw.label_b, raw.combination_label, raw.size(), column_sums(raw), 0.02};
    auto result = solve(validate_and_normalize(raw));
    report.feasibility = result.feasibility;
    report.model = std::move(result.solution);
    return report;
}

} // namespace

TEST_CASE("report json round-trips") {
    const auto report = bundled_report();
    const auto json = to_json(report);
    CHECK(json["tool"]["name"] == "conceptq");
    CHECK(json["feasible"] == true);
    CHECK(json["model"]["m"] == 19);
    CHECK(json["model"]["exemplars"].size() == 24);
    CHECK(json["model"]["exemplars"][0]["name"] == "Almond");
    CHECK(json["model"]["exemplars"][18]["phi_display"].is_string());

    const auto back = report_from_json(nlohmann::ordered_json::parse(json.dump()));
    CHECK(same_report(back, report));
    CHECK(to_json(back).dump(2) == json.dump(2));
    CHECK(to_json(bundled_report()).dump() == json.dump());

    SUBCASE("tampered derived fields are rejected") {
        auto bad = json;
        bad["model"]["exemplars"][0]["class"] = "Classical";
        CHECK_THROWS_AS(report_from_json(bad), ParseError);
        bad = json;
        bad["model"]["vector_b"].erase(0);
        CHECK_THROWS_AS(report_from_json(bad), ParseError);
        bad = json;
        bad["feasible"] = false;
        CHECK_THROWS_AS(report_from_json(bad), ParseError);
    }
}

TEST_CASE("infeasible reports carry a null model") {
    TypicalityTable t;
    t.records = {{1, "x", 0.1, 0.1, 0.6}, {2, "y", 0.9, 0.9, 0.4}};
    SolveReport report;
    report.dataset = {t.label_a, t.label_b, t.combination_label, 2, column_sums(t), 0.02};
    auto result = solve(t);
    report.feasibility = result.feasibility;
    report.model = result.solution;
    const auto json = to_json(report);
    CHECK(json["feasible"] == false);
    CHECK(json["model"].is_null());
    CHECK(json["feasibility"]["infeasible_exemplars"].size() == 1);
    CHECK(same_report(report_from_json(json), report));
}

TEST_CASE("threshold config files") {
    std::istringstream in("# overrides\northogonality = 1e-6\n\nphi_regression_deg=1\n");
    const auto t = parse_thresholds(in);
    CHECK(t.orthogonality == 1e-6);
    CHECK(t.phi_regression_deg == 1.0);
    CHECK(t.norm == Thresholds{}.norm);

    std::istringstream unknown("orthogonalty = 1\n");
    CHECK_THROWS_AS(parse_thresholds(unknown), ValidationError);
    std::istringstream negative("norm = -1\n");
    CHECK_THROWS_AS(parse_thresholds(negative), ValidationError);
    std::istringstream garbage("norm = abc\n");
    CHECK_THROWS_AS(parse_thresholds(garbage), ValidationError);
}

TEST_CASE("solve subcommand") {
    std::ostringstream out, err;
    REQUIRE(run_solve({kBundled, std::nullopt, {}}, out, err) == kExitOk);
    const auto json = nlohmann::ordered_json::parse(out.str());
    const auto& tomato = json["model"]["exemplars"][18];
    CHECK(tomato["name"] == "Tomato");
    CHECK(tomato["lambda"].get<double>() == doctest::Approx(0.0768).epsilon(5e-4 / 0.0768));
    CHECK(json["model"]["c_m"].get<double>() == doctest::Approx(oracle::kNormalizedCm).epsilon(1e-12));
    CHECK(json["dataset"]["label_a"] == "Fruits");

    SUBCASE("infeasible data exit 2 and still report") {
        const auto dir = scratch_dir("infeasible");
        const auto csv = write_text(dir / "bad.csv", "exemplar,mu_a,mu_b,mu_ab\nx,0.1,0.1,0.6\ny,0.9,0.9,0.4\n");
        std::ostringstream o, e;
        CHECK(run_solve({csv, std::nullopt, {}}, o, e) == kExitInfeasible);
        CHECK(nlohmann::ordered_json::parse(o.str())["feasible"] == false);
        CHECK(e.str().find("exemplar 1 (x)") != std::string::npos);
    }
    SUBCASE("missing input exits 1") {
        std::ostringstream o, e;
        CHECK(run_solve({"/nonexistent/table.csv", std::nullopt, {}}, o, e) == kExitUsage);
    }
    SUBCASE("columns outside tolerance exit 1") {
        const auto dir = scratch_dir("tolerance");
        const auto csv = write_text(dir / "t.csv", "exemplar,mu_a,mu_b,mu_ab\nx,0.5,0.5,0.5\ny,0.4,0.5,0.5\n");
        std::ostringstream o, e;
        CHECK(run_solve({csv, std::nullopt, {}}, o, e) == kExitUsage);
        Thresholds loose;
        loose.normalization_tolerance = 0.2;
        CHECK(run_solve({csv, std::nullopt, loose}, o, e) == kExitOk);
    }
}

TEST_CASE("verify subcommand recomputes residuals") {
    const auto dir = scratch_dir("verify");
    std::ostringstream out, err;
    REQUIRE(run_solve({kBundled, dir / "report.json", {}}, out, err) == kExitOk);
    CHECK(out.str().empty());

    std::ostringstream vout, verr;
    CHECK(run_verify({dir / "report.json", {}}, vout, verr) == kExitOk);
    const auto json = nlohmann::ordered_json::parse(vout.str());
    CHECK(json["identical"] == true);
    CHECK(json["within_thresholds"] == true);
    CHECK(json["stored"] == json["recomputed"]);

    // a perturbed vector is caught
    std::ifstream in(dir / "report.json");
    auto report = nlohmann::ordered_json::parse(in);
    report["model"]["vector_b"][0]["re"] = report["model"]["vector_b"][0]["re"].get<double>() + 1e-3;
    write_text(dir / "tampered.json", report.dump(2));
    std::ostringstream tout, terr;
    CHECK(run_verify({dir / "tampered.json", {}}, tout, terr) == kExitInfeasible);

    std::ostringstream mout, merr;
    CHECK(run_verify({dir / "missing.json", {}}, mout, merr) == kExitUsage);
}

TEST_CASE("classify subcommand") {
    std::ostringstream out, err;
    REQUIRE(run_classify({kBundled, {}}, out, err) == kExitOk);
    const std::string text = out.str();
    const auto weak = text.find("Weakening (14)");
    const auto strong = text.find("Strengthening (10)");
    REQUIRE(weak != std::string::npos);
    REQUIRE(strong != std::string::npos);
    CHECK(text.find("Classical") == std::string::npos);

    // first row under each heading
    const auto first_row = [&](std::size_t heading) {
        const auto start = text.find('\n', heading) + 1;
        return text.substr(start, text.find('\n', start) - start);
    };
    CHECK(first_row(weak).find("Elderberry") != std::string::npos);
    CHECK(first_row(strong).find("Mushroom") != std::string::npos);

    const auto watercress = text.find("Watercress");
    REQUIRE(watercress != std::string::npos);
    CHECK(watercress > strong);
    CHECK(text.find("[1] Watercress") != std::string::npos);
}

TEST_CASE("render subcommand") {
    const auto dir = scratch_dir("render");
    RenderOptions options;
    options.input = kBundled;
    options.out_dir = dir;
    options.resolution = 40;
    std::ostringstream out, err;
    REQUIRE(run_render(options, out, err) == kExitOk);
    for (const char* name : {"a_only", "b_only", "classical", "interference"}) {
        CHECK(fs::exists(dir / (std::string(name) + ".csv")));
        CHECK(fs::file_size(dir / (std::string(name) + ".pgm")) == std::string("P5\n40 40\n255\n").size() + 1600);
    }
    CHECK(fs::exists(dir / "placements.csv"));

    options.resolution = 1;
    CHECK(run_render(options, out, err) == kExitUsage);
    options.resolution = 40;
    options.window = Window{0, 0, 0, 1};
    CHECK(run_render(options, out, err) == kExitUsage);
}
