#pragma once

#include "conceptq/complexlin.hpp"
#include "conceptq/dataset.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conceptq {

// Exemplars with |deviation| at or below this are classically additive.
inline constexpr double kClassicalThreshold = 1e-12;

struct InfeasibleExemplar {
    std::size_t index = 0;
    std::string name;
    double radicand = 0.0; // mu_a * mu_b - deviation^2, negative
};

struct FeasibilityReport {
    std::vector<InfeasibleExemplar> infeasible_exemplars;
    std::optional<double> cm_violation; // c_m when it exceeds 1
    bool cm_degenerate = false;         // c_m == 0
    std::optional<std::string> phase_violation;

    bool feasible() const {
        return infeasible_exemplars.empty() && !cm_violation && !cm_degenerate && !phase_violation;
    }
    std::string describe() const;
};

struct LambdaMagnitudes {
    std::vector<double> magnitudes; // NaN for infeasible rows
    FeasibilityReport feasibility;
};

struct SignAssignment {
    std::vector<int> signs;                 // +1 / -1 in table order
    std::size_t m = 0;                      // 1-based index of the largest magnitude
    std::vector<std::size_t> visit_order;   // 1-based, m first
    std::vector<double> running_sums;       // signed sum after each visit
};

struct Phases {
    std::vector<double> phi_deg;
    std::vector<double> beta_deg;
};

struct StatePair {
    StateVector a;
    StateVector b;
};

struct VerificationReport {
    double orthogonality_modulus = 0.0;
    double norm_a_error = 0.0;
    double norm_b_error = 0.0;
    double max_reconstruction_error = 0.0;

    bool operator==(const VerificationReport&) const = default;
};

struct ExemplarSolution {
    std::size_t index = 0;
    std::string name;
    double mu_a = 0.0;
    double mu_b = 0.0;
    double mu_ab = 0.0;
    double deviation = 0.0;
    double lambda = 0.0;
    double phi_deg = 0.0;
    double beta_deg = 0.0;
    double c = 1.0;

    bool operator==(const ExemplarSolution&) const = default;
};

struct InterferenceSolution {
    std::vector<ExemplarSolution> exemplars;
    std::size_t m = 0; // 1-based
    double c_m = 1.0;
    StateVector vector_a;
    StateVector vector_b;
    VerificationReport residuals;

    ProjectorLayout layout() const { return {exemplars.size(), m}; }
    const ExemplarSolution& at(std::size_t index) const; // 1-based

    bool operator==(const InterferenceSolution&) const = default;
};

enum class InterferenceClass { Weakening, Strengthening, Classical };

std::string_view to_string(InterferenceClass cls);
std::optional<InterferenceClass> interference_class_from_string(std::string_view text);

struct Classification {
    std::size_t index = 0;
    std::string name;
    InterferenceClass cls = InterferenceClass::Classical;
    double deviation = 0.0;
    // deviation / sqrt(mu_a * mu_b): cos(phi) for every exemplar but m
    double strength = 0.0;
};

struct SolveResult {
    FeasibilityReport feasibility;
    std::optional<InterferenceSolution> solution;
};

/// mu_ab - (mu_a + mu_b) / 2 per exemplar, in table order.
std::vector<double> compute_deviations(const TypicalityTable& table);

/// |lambda_k| = sqrt(mu_a mu_b - deviation^2). Rows with a negative radicand
/// are reported, not thrown.
LambdaMagnitudes compute_lambda_magnitudes(const TypicalityTable& table);

/// Greedy sign choice that keeps the running signed sum nonnegative.
///
/// m is the largest magnitude and always gets +. The rest are visited in
/// decreasing magnitude (ties by lower index) and take - whenever the sum
/// stays >= 0 after subtracting, + otherwise.
SignAssignment assign_signs(std::span<const double> magnitudes);

/// Coefficient of exemplar m that cancels the imaginary part of <A|B>.
/// Clamps to 1 within 1e-9; throws ModelInfeasible above that and
/// DegenerateModelError when it vanishes.
double compute_cm(const TypicalityTable& table, std::span<const double> lambdas, std::size_t m);

/// phi_k carries the sign of lambda_k; beta_k = phi_k (beta_m = |phi_m|).
Phases compute_phases(const TypicalityTable& table, std::span<const double> lambdas,
                      std::size_t m, double c_m);

StatePair build_state_vectors(const TypicalityTable& table, std::size_t m, double c_m,
                              std::span<const double> beta_deg);

VerificationReport verify_state_vectors(const StateVector& a, const StateVector& b,
                                        const ProjectorLayout& layout,
                                        std::span<const double> mu_ab);
VerificationReport verify_solution(const InterferenceSolution& solution,
                                   const TypicalityTable& table);

InterferenceClass classify_deviation(double deviation);
std::vector<Classification> classify_exemplars(const InterferenceSolution& solution);

/// Full pipeline on a validated, normalized table.
SolveResult solve(const TypicalityTable& table);

} // namespace conceptq
