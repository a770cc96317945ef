#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace conceptq {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

double deg_to_rad(double degrees);
double rad_to_deg(double radians);

// cos/sin of an angle in degrees, exact (0, +/-1) at multiples of 90.
double cos_deg(double degrees);
double sin_deg(double degrees);

// e^{i * degrees}
Complex unit_phase(double degrees);

/// Amplitude vector in C^(n+1). Coordinates 1..n carry one exemplar each;
/// coordinate n+1 is the extra direction spanning the plane of exemplar m.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<Complex> amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    std::size_t size() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }

    // 1-based, matching the exemplar numbering
    const Complex& coordinate(std::size_t k) const;

    double norm_squared() const;
    double norm() const;
    bool is_normalized(double tolerance = 1e-9) const;

    bool operator==(const StateVector&) const = default;

private:
    std::vector<Complex> amplitudes_;
};

/// The spectral family {M_k}: M_k (k != m) projects onto coordinate k,
/// M_m onto the plane {m, n+1}. Never materialized as matrices.
class ProjectorLayout {
public:
    ProjectorLayout(std::size_t n, std::size_t m);

    std::size_t exemplars() const { return n_; }
    std::size_t plane_index() const { return m_; }
    std::size_t dimension() const { return n_ + 1; }

private:
    std::size_t n_;
    std::size_t m_;
};

/// sum_k conj(u_k) v_k; conjugate-linear in u.
Complex inner_product(const StateVector& u, const StateVector& v);

/// <u|M_k|u>
double project_probability(const ProjectorLayout& layout, std::size_t k, const StateVector& u);

/// (u + v) / sqrt(2). Requires unit u, v with |<u|v>| < orthogonality_tolerance.
StateVector superpose_normalized(const StateVector& u, const StateVector& v,
                                 double orthogonality_tolerance = 1e-6);

} // namespace conceptq
