#include "conceptq/solver.hpp"

#include "conceptq/error.hpp"
#include "conceptq/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace conceptq {

namespace {

constexpr double kCmClampSlack = 1e-9;
constexpr double kArccosSlack = 1e-12;
constexpr double kRadicandSlack = 1e-15;

// Indices (0-based) by decreasing magnitude, ties to the lower index.
std::vector<std::size_t> magnitude_order(std::span<const double> magnitudes) {
    std::vector<std::size_t> order(magnitudes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        return std::abs(magnitudes[lhs]) > std::abs(magnitudes[rhs]);
    });
    return order;
}

double acos_deg(double argument) {
    if (argument == 0.0) return 90.0;
    if (argument == 1.0) return 0.0;
    if (argument == -1.0) return 180.0;
    return rad_to_deg(std::acos(argument));
}

double checked_arccos_argument(double argument, const ExemplarRecord& r) {
    if (std::abs(argument) <= 1.0) return argument;
    if (std::abs(argument) <= 1.0 + kArccosSlack) return std::copysign(1.0, argument);
    throw ModelInfeasible("phase of exemplar '" + r.name + "' undefined: cos(phi) = " +
                              format_double(argument),
                          argument);
}

} // namespace

std::string FeasibilityReport::describe() const {
    if (feasible()) return "model constructible";
    std::string text;
    for (const auto& row : infeasible_exemplars) {
        text += "exemplar " + std::to_string(row.index) + " (" + row.name +
                "): mu_a*mu_b - deviation^2 = " + format_double(row.radicand) +
                " < 0, interference exceeds sqrt(mu_a*mu_b)\n";
    }
    if (cm_violation) {
        text += "c_m = " + format_double(*cm_violation) + " > 1: imaginary parts cannot cancel\n";
    }
    if (cm_degenerate) {
        text += "c_m = 0: data are classically additive and the off-m imaginary parts already "
                "cancel; the plane exemplar has no defined phase\n";
    }
    if (phase_violation) text += *phase_violation + "\n";
    return text;
}

const ExemplarSolution& InterferenceSolution::at(std::size_t index) const {
    if (index == 0 || index > exemplars.size()) {
        throw IndexError("exemplar index " + std::to_string(index) + " outside 1.." +
                         std::to_string(exemplars.size()));
    }
    return exemplars[index - 1];
}

std::string_view to_string(InterferenceClass cls) {
    switch (cls) {
    case InterferenceClass::Weakening: return "Weakening";
    case InterferenceClass::Strengthening: return "Strengthening";
    case InterferenceClass::Classical: return "Classical";
    }
    return "Classical";
}

std::optional<InterferenceClass> interference_class_from_string(std::string_view text) {
    for (auto cls : {InterferenceClass::Weakening, InterferenceClass::Strengthening,
                     InterferenceClass::Classical}) {
        if (to_string(cls) == text) return cls;
    }
    return std::nullopt;
}

std::vector<double> compute_deviations(const TypicalityTable& table) {
    std::vector<double> deviations;
    deviations.reserve(table.size());
    for (const auto& r : table.records) deviations.push_back(r.mu_ab - r.average());
    return deviations;
}

LambdaMagnitudes compute_lambda_magnitudes(const TypicalityTable& table) {
    LambdaMagnitudes out;
    out.magnitudes.reserve(table.size());
    for (const auto& r : table.records) {
        const double deviation = r.mu_ab - r.average();
        double radicand = r.mu_a * r.mu_b - deviation * deviation;
        if (radicand < 0.0 && radicand >= -kRadicandSlack) radicand = 0.0;
        if (radicand < 0.0) {
            out.feasibility.infeasible_exemplars.push_back({r.index, r.name, radicand});
            out.magnitudes.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            out.magnitudes.push_back(std::sqrt(radicand));
        }
    }
    return out;
}

SignAssignment assign_signs(std::span<const double> magnitudes) {
    if (magnitudes.size() < 2) {
        throw ValidationError("sign assignment needs at least 2 magnitudes");
    }
    for (double v : magnitudes) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ValidationError("lambda magnitudes must be finite and nonnegative");
        }
    }

    SignAssignment out;
    out.signs.assign(magnitudes.size(), 0);
    const auto order = magnitude_order(magnitudes);
    double running = 0.0;
    for (std::size_t step = 0; step < order.size(); ++step) {
        const std::size_t k = order[step];
        const double mag = magnitudes[k];
        if (step == 0) {
            out.signs[k] = +1;
            running = mag;
        } else if (running - mag >= 0.0) {
            out.signs[k] = -1;
            running -= mag;
        } else {
            out.signs[k] = +1;
            running += mag;
        }
        out.visit_order.push_back(k + 1);
        out.running_sums.push_back(running);
    }
    out.m = order.front() + 1;
    return out;
}

double compute_cm(const TypicalityTable& table, std::span<const double> lambdas, std::size_t m) {
    if (lambdas.size() != table.size()) throw DimensionError(table.size(), lambdas.size());
    const auto& plane = table.at(m);

    // Summed in visit order so the result does not depend on row order.
    double off_plane = 0.0;
    for (std::size_t k : magnitude_order(lambdas)) {
        if (k + 1 != m) off_plane += lambdas[k];
    }
    const double deviation = plane.mu_ab - plane.average();
    double c_m =
        std::sqrt((off_plane * off_plane + deviation * deviation) / (plane.mu_a * plane.mu_b));

    if (c_m > 1.0 + kCmClampSlack) {
        throw ModelInfeasible("c_m = " + format_double(c_m) + " exceeds 1", c_m);
    }
    if (c_m > 1.0) c_m = 1.0;
    if (c_m <= kClassicalThreshold) {
        throw DegenerateModelError(
            "c_m = 0: classically additive data, phase of exemplar '" + plane.name + "' undefined",
            c_m);
    }
    return c_m;
}

Phases compute_phases(const TypicalityTable& table, std::span<const double> lambdas,
                      std::size_t m, double c_m) {
    if (lambdas.size() != table.size()) throw DimensionError(table.size(), lambdas.size());
    if (m == 0 || m > table.size()) throw IndexError("plane index " + std::to_string(m) + " out of range");
    Phases out;
    out.phi_deg.reserve(table.size());
    out.beta_deg.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& r = table.records[i];
        const double c = (i + 1 == m) ? c_m : 1.0;
        const double deviation = r.mu_ab - r.average();
        const double argument =
            checked_arccos_argument(deviation / (c * std::sqrt(r.mu_a * r.mu_b)), r);
        const double angle = acos_deg(argument);
        const double phi = std::signbit(lambdas[i]) ? -angle : angle;
        out.phi_deg.push_back(phi);
        out.beta_deg.push_back(i + 1 == m ? angle : phi);
    }
    return out;
}

StatePair build_state_vectors(const TypicalityTable& table, std::size_t m, double c_m,
                              std::span<const double> beta_deg) {
    if (beta_deg.size() != table.size()) throw DimensionError(table.size(), beta_deg.size());
    const auto& plane = table.at(m);
    const std::size_t n = table.size();
    std::vector<Complex> a(n + 1);
    std::vector<Complex> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = table.records[i];
        const double c = (i + 1 == m) ? c_m : 1.0;
        a[i] = std::sqrt(r.mu_a);
        b[i] = c * std::sqrt(r.mu_b) * unit_phase(beta_deg[i]);
    }
    a[n] = 0.0;
    b[n] = std::sqrt(plane.mu_b * std::max(0.0, 1.0 - c_m * c_m));
    return {StateVector(std::move(a)), StateVector(std::move(b))};
}

VerificationReport verify_state_vectors(const StateVector& a, const StateVector& b,
                                        const ProjectorLayout& layout,
                                        std::span<const double> mu_ab) {
    if (a.size() != layout.dimension()) throw DimensionError(layout.dimension(), a.size());
    if (b.size() != layout.dimension()) throw DimensionError(layout.dimension(), b.size());
    if (mu_ab.size() != layout.exemplars()) throw DimensionError(layout.exemplars(), mu_ab.size());

    VerificationReport report;
    report.orthogonality_modulus = std::abs(inner_product(a, b));
    report.norm_a_error = std::abs(a.norm() - 1.0);
    report.norm_b_error = std::abs(b.norm() - 1.0);

    // (A + B) / sqrt(2) without the orthogonality precondition, so broken inputs still report.
    const double scale = 1.0 / std::sqrt(2.0);
    std::vector<Complex> sum(a.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] = (a.amplitudes()[i] + b.amplitudes()[i]) * scale;
    }
    const StateVector combined(std::move(sum));
    for (std::size_t k = 1; k <= layout.exemplars(); ++k) {
        const double err = std::abs(mu_ab[k - 1] - project_probability(layout, k, combined));
        report.max_reconstruction_error = std::max(report.max_reconstruction_error, err);
    }
    return report;
}

VerificationReport verify_solution(const InterferenceSolution& solution,
                                   const TypicalityTable& table) {
    std::vector<double> mu_ab;
    mu_ab.reserve(table.size());
    for (const auto& r : table.records) mu_ab.push_back(r.mu_ab);
    return verify_state_vectors(solution.vector_a, solution.vector_b, solution.layout(), mu_ab);
}

InterferenceClass classify_deviation(double deviation) {
    if (deviation < -kClassicalThreshold) return InterferenceClass::Weakening;
    if (deviation > kClassicalThreshold) return InterferenceClass::Strengthening;
    return InterferenceClass::Classical;
}

std::vector<Classification> classify_exemplars(const InterferenceSolution& solution) {
    std::vector<Classification> out;
    out.reserve(solution.exemplars.size());
    for (const auto& e : solution.exemplars) {
        Classification c;
        c.index = e.index;
        c.name = e.name;
        c.deviation = e.deviation;
        c.strength = e.deviation / std::sqrt(e.mu_a * e.mu_b);
        c.cls = classify_deviation(e.deviation);
        out.push_back(std::move(c));
    }
    return out;
}

SolveResult solve(const TypicalityTable& table) {
    SolveResult result;
    const auto deviations = compute_deviations(table);
    auto magnitudes = compute_lambda_magnitudes(table);
    result.feasibility = magnitudes.feasibility;
    if (!result.feasibility.feasible()) return result;

    const auto signs = assign_signs(magnitudes.magnitudes);
    std::vector<double> lambdas(table.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        lambdas[i] = signs.signs[i] * magnitudes.magnitudes[i];
    }

    double c_m = 1.0;
    try {
        c_m = compute_cm(table, lambdas, signs.m);
    } catch (const DegenerateModelError&) {
        result.feasibility.cm_degenerate = true;
        return result;
    } catch (const ModelInfeasible& e) {
        result.feasibility.cm_violation = e.value();
        return result;
    }

    Phases phases;
    try {
        phases = compute_phases(table, lambdas, signs.m, c_m);
    } catch (const ModelInfeasible& e) {
        result.feasibility.phase_violation = e.what();
        return result;
    }

    auto states = build_state_vectors(table, signs.m, c_m, phases.beta_deg);

    InterferenceSolution solution;
    solution.m = signs.m;
    solution.c_m = c_m;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& r = table.records[i];
        solution.exemplars.push_back({r.index, r.name, r.mu_a, r.mu_b, r.mu_ab, deviations[i],
                                      lambdas[i], phases.phi_deg[i], phases.beta_deg[i],
                                      i + 1 == signs.m ? c_m : 1.0});
    }
    solution.vector_a = std::move(states.a);
    solution.vector_b = std::move(states.b);
    solution.residuals = verify_solution(solution, table);
    result.solution = std::move(solution);
    return result;
}

} // namespace conceptq
