#include "conceptq/complexlin.hpp"

#include "conceptq/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace conceptq {

double deg_to_rad(double degrees) { return degrees * (kPi / 180.0); }
double rad_to_deg(double radians) { return radians * (180.0 / kPi); }

namespace {

// Returns the quadrant q (0..3) when degrees is an exact multiple of 90.
bool right_angle_quadrant(double degrees, int& quadrant) {
    const double turns = degrees / 90.0;
    if (std::abs(turns) > 1e15 || turns != std::nearbyint(turns)) return false;
    const auto q = static_cast<long long>(std::nearbyint(turns)) % 4;
    quadrant = static_cast<int>(q < 0 ? q + 4 : q);
    return true;
}

} // namespace

double cos_deg(double degrees) {
    int q = 0;
    if (right_angle_quadrant(degrees, q)) {
        constexpr double table[] = {1.0, 0.0, -1.0, 0.0};
        return table[q];
    }
    return std::cos(deg_to_rad(degrees));
}

double sin_deg(double degrees) {
    int q = 0;
    if (right_angle_quadrant(degrees, q)) {
        constexpr double table[] = {0.0, 1.0, 0.0, -1.0};
        return table[q];
    }
    return std::sin(deg_to_rad(degrees));
}

Complex unit_phase(double degrees) { return {cos_deg(degrees), sin_deg(degrees)}; }

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw Error("state vector amplitudes must be finite");
        }
    }
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(std::vector<Complex>(amplitudes)) {}

const Complex& StateVector::coordinate(std::size_t k) const {
    if (k == 0 || k > amplitudes_.size()) {
        throw IndexError("coordinate " + std::to_string(k) + " outside 1.." +
                         std::to_string(amplitudes_.size()));
    }
    return amplitudes_[k - 1];
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized(double tolerance) const {
    return std::abs(norm() - 1.0) <= tolerance;
}

ProjectorLayout::ProjectorLayout(std::size_t n, std::size_t m) : n_(n), m_(m) {
    if (n == 0) throw IndexError("projector layout needs at least one exemplar");
    if (m == 0 || m > n) {
        throw IndexError("plane index " + std::to_string(m) + " outside 1.." + std::to_string(n));
    }
}

Complex inner_product(const StateVector& u, const StateVector& v) {
    if (u.size() != v.size()) throw DimensionError(u.size(), v.size());
    const auto a = u.amplitudes();
    const auto b = v.amplitudes();
    Complex total{};
    for (std::size_t i = 0; i < a.size(); ++i) total += std::conj(a[i]) * b[i];
    return total;
}

double project_probability(const ProjectorLayout& layout, std::size_t k, const StateVector& u) {
    if (u.size() != layout.dimension()) throw DimensionError(layout.dimension(), u.size());
    if (k == 0 || k > layout.exemplars()) {
        throw IndexError("projector index " + std::to_string(k) + " outside 1.." +
                         std::to_string(layout.exemplars()));
    }
    double p = std::norm(u.coordinate(k));
    if (k == layout.plane_index()) p += std::norm(u.coordinate(layout.dimension()));
    return p;
}

StateVector superpose_normalized(const StateVector& u, const StateVector& v,
                                 double orthogonality_tolerance) {
    if (u.size() != v.size()) throw DimensionError(u.size(), v.size());
    for (const auto* s : {&u, &v}) {
        if (!s->is_normalized(orthogonality_tolerance)) {
            throw PreconditionError("superposed state is not normalized", std::abs(s->norm() - 1.0));
        }
    }
    const double overlap = std::abs(inner_product(u, v));
    if (overlap >= orthogonality_tolerance) {
        throw PreconditionError("superposed states are not orthogonal: |<u|v>| = " +
                                    std::to_string(overlap),
                                overlap);
    }
    const double scale = 1.0 / std::sqrt(2.0);
    const auto a = u.amplitudes();
    const auto b = v.amplitudes();
    std::vector<Complex> sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = (a[i] + b[i]) * scale;
    return StateVector(std::move(sum));
}

} // namespace conceptq
