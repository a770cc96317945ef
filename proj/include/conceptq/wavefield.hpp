#pragma once

#include "conceptq/dataset.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conceptq {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

double distance(Point2 p, Point2 q);

/// Isotropic 2D Gaussian intensity peak * exp(-|p - center|^2 / (2 sigma^2)).
class GaussianField {
public:
    GaussianField(Point2 center, double sigma, double peak);

    Point2 center() const { return center_; }
    double sigma() const { return sigma_; }
    double peak() const { return peak_; }

    double intensity(Point2 p) const;

    // Distance from the center at which intensity falls to fraction * peak (0 < fraction <= 1).
    double level_radius(double fraction) const;

private:
    Point2 center_;
    double sigma_;
    double peak_;
};

inline constexpr Point2 kDefaultCenterA{0.0, 0.0};
inline constexpr Point2 kDefaultCenterB{10.0, 4.0};

struct FieldPair {
    GaussianField a;
    GaussianField b;
    std::size_t top_a = 0; // 1-based exemplar at a's center
    std::size_t top_b = 0;
    double scale = 1.0;    // intensity = scale * probability at each exemplar
};

/// Centers each field on its concept's most typical exemplar and picks each
/// width so that the field also passes through the other concept's top
/// exemplar at the right level. Ties for the maximum go to the lower index.
///
/// Throws FitError for coincident centers, a shared top exemplar, or a
/// non-positive scale.
FieldPair fit_gaussian_fields(const TypicalityTable& table, Point2 center_a = kDefaultCenterA,
                              Point2 center_b = kDefaultCenterB, double scale = 1.0);

struct Placement {
    std::size_t index = 0;
    std::string name;
    Point2 location;
    double residual = 0.0; // 0 when both level curves are met exactly

    bool operator==(const Placement&) const = default;
};

using PlacementMap = std::vector<Placement>;

struct LevelPoint {
    Point2 location;
    double residual = 0.0;
};

/// Intersection of the circle of radius radius_a about center_a and radius_b
/// about center_b, taking the one left of the directed line a -> b when
/// `left` is set. Without an intersection, the point on the center line that
/// minimizes the summed squared radial violations; residual is the root of
/// that sum.
LevelPoint place_on_level_curves(Point2 center_a, double radius_a, Point2 center_b,
                                 double radius_b, bool left);

/// Even-indexed exemplars take the left intersection, odd-indexed the right.
PlacementMap place_exemplars(const TypicalityTable& table, const FieldPair& fields);

/// phi(x, y) in degrees: inverse-distance-squared interpolation over the
/// placed exemplars, or a constant.
class PhaseField {
public:
    struct Node {
        Point2 location;
        double phi_deg = 0.0;
    };

    static PhaseField inverse_distance(std::vector<Node> nodes);
    static PhaseField constant(double phi_deg);

    double evaluate(Point2 p) const;
    std::string_view rule() const { return nodes_.empty() ? "constant" : "inverse-distance-2"; }
    std::span<const Node> nodes() const { return nodes_; }

private:
    PhaseField() = default;

    std::vector<Node> nodes_;
    double constant_ = 0.0;
};

/// Throws Error on size mismatch or two exemplars at the same location.
PhaseField interpolate_phase(const PlacementMap& placements, std::span<const double> phi_deg);

struct Window {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool operator==(const Window&) const = default;
};

/// Row-major grid sampled at pixel centers. Row 0 is the top edge (y_max).
class RasterGrid {
public:
    RasterGrid(std::size_t width, std::size_t height, Window window);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    const Window& window() const { return window_; }

    double& at(std::size_t col, std::size_t row) { return values_[row * width_ + col]; }
    double at(std::size_t col, std::size_t row) const { return values_[row * width_ + col]; }
    std::span<const double> values() const { return values_; }

    Point2 pixel_center(std::size_t col, std::size_t row) const;
    // Pixel containing p, clamped to the grid.
    std::pair<std::size_t, std::size_t> pixel_of(Point2 p) const;

private:
    std::size_t width_;
    std::size_t height_;
    Window window_;
    std::vector<double> values_;
};

struct RenderedGrids {
    RasterGrid a_only;
    RasterGrid b_only;
    RasterGrid classical;
    RasterGrid interference;
};

inline constexpr std::size_t kDefaultResolution = 400;

/// Bounding box of the placements padded by twice the wider sigma.
Window default_window(const PlacementMap& placements, const FieldPair& fields);

/// a_only = G_A, b_only = G_B, classical = (G_A + G_B) / 2,
/// interference = classical + sqrt(G_A G_B) cos phi. Rows are evaluated in
/// parallel.
RenderedGrids render_grids(const FieldPair& fields, const PhaseField& phase, const Window& window,
                           std::size_t width, std::size_t height);

} // namespace conceptq
