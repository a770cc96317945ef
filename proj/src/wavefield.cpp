#include "conceptq/wavefield.hpp"

#include "conceptq/complexlin.hpp"
#include "conceptq/error.hpp"
#include "conceptq/numfmt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <thread>

namespace conceptq {

namespace {

std::size_t argmax(const TypicalityTable& table, double ExemplarRecord::*column) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (table.records[i].*column > table.records[best].*column) best = i;
    }
    return best + 1;
}

// sigma such that peak * exp(-d^2 / 2 sigma^2) = ratio * peak
double sigma_through(double d, double ratio) {
    if (!(ratio > 0.0) || !(ratio < 1.0)) {
        throw FitError("level ratio " + format_double(ratio) + " outside (0, 1)");
    }
    return d / std::sqrt(-2.0 * std::log(ratio));
}

} // namespace

double distance(Point2 p, Point2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

GaussianField::GaussianField(Point2 center, double sigma, double peak)
    : center_(center), sigma_(sigma), peak_(peak) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw FitError("sigma must be positive");
    if (!(peak > 0.0) || !std::isfinite(peak)) throw FitError("peak must be positive");
}

double GaussianField::intensity(Point2 p) const {
    const double dx = p.x - center_.x;
    const double dy = p.y - center_.y;
    return peak_ * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_ * sigma_));
}

double GaussianField::level_radius(double fraction) const {
    if (!(fraction > 0.0) || fraction > 1.0) throw FitError("level fraction outside (0, 1]");
    if (fraction == 1.0) return 0.0;
    return sigma_ * std::sqrt(-2.0 * std::log(fraction));
}

FieldPair fit_gaussian_fields(const TypicalityTable& table, Point2 center_a, Point2 center_b,
                              double scale) {
    if (table.size() < 2) throw FitError("need at least 2 exemplars");
    if (!(scale > 0.0)) throw FitError("display scale must be positive");
    const double d = distance(center_a, center_b);
    if (!(d > 0.0)) throw FitError("field centers coincide");

    const std::size_t top_a = argmax(table, &ExemplarRecord::mu_a);
    const std::size_t top_b = argmax(table, &ExemplarRecord::mu_b);
    if (top_a == top_b) {
        throw FitError("exemplar '" + table.at(top_a).name + "' is most typical of both concepts");
    }
    const double max_a = table.at(top_a).mu_a;
    const double max_b = table.at(top_b).mu_b;
    const double sigma_a = sigma_through(d, table.at(top_b).mu_a / max_a);
    const double sigma_b = sigma_through(d, table.at(top_a).mu_b / max_b);
    return {GaussianField(center_a, sigma_a, scale * max_a),
            GaussianField(center_b, sigma_b, scale * max_b), top_a, top_b, scale};
}

LevelPoint place_on_level_curves(Point2 center_a, double radius_a, Point2 center_b,
                                 double radius_b, bool left) {
    const double d = distance(center_a, center_b);
    if (!(d > 0.0)) throw FitError("field centers coincide");
    const Point2 u{(center_b.x - center_a.x) / d, (center_b.y - center_a.y) / d};
    const Point2 normal{-u.y, u.x};
    const auto along = [&](double t, double h) {
        return Point2{center_a.x + t * u.x + h * normal.x, center_a.y + t * u.y + h * normal.y};
    };

    if (radius_a + radius_b >= d && std::abs(radius_a - radius_b) <= d) {
        const double t = (d * d + radius_a * radius_a - radius_b * radius_b) / (2.0 * d);
        const double h = std::sqrt(std::max(0.0, radius_a * radius_a - t * t));
        return {along(t, left ? h : -h), 0.0};
    }

    // (|t| - r_a)^2 + (|t - d| - r_b)^2 is quadratic on each of t < 0, [0, d], t > d.
    const auto violation = [&](double t) {
        const double ea = std::abs(t) - radius_a;
        const double eb = std::abs(t - d) - radius_b;
        return ea * ea + eb * eb;
    };
    const std::array<double, 3> candidates{
        std::min(0.0, 0.5 * (d - radius_a - radius_b)),
        std::clamp(0.5 * (radius_a + d - radius_b), 0.0, d),
        std::max(d, 0.5 * (radius_a + d + radius_b)),
    };
    double best = candidates[0];
    for (double t : candidates) {
        if (violation(t) < violation(best)) best = t;
    }
    return {along(best, 0.0), std::sqrt(violation(best))};
}

PlacementMap place_exemplars(const TypicalityTable& table, const FieldPair& fields) {
    const double max_a = fields.a.peak() / fields.scale;
    const double max_b = fields.b.peak() / fields.scale;
    PlacementMap out;
    out.reserve(table.size());
    for (const auto& r : table.records) {
        Placement p{r.index, r.name, {}, 0.0};
        if (r.index == fields.top_a) {
            p.location = fields.a.center();
        } else if (r.index == fields.top_b) {
            p.location = fields.b.center();
        } else {
            const auto level = place_on_level_curves(
                fields.a.center(), fields.a.level_radius(std::min(1.0, r.mu_a / max_a)),
                fields.b.center(), fields.b.level_radius(std::min(1.0, r.mu_b / max_b)),
                r.index % 2 == 0);
            p.location = level.location;
            p.residual = level.residual;
        }
        out.push_back(std::move(p));
    }
    return out;
}

PhaseField PhaseField::inverse_distance(std::vector<Node> nodes) {
    if (nodes.empty()) throw Error("phase interpolation needs at least one node");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (nodes[i].location == nodes[j].location) {
                throw Error("phase nodes " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " share a location");
            }
        }
    }
    PhaseField field;
    field.nodes_ = std::move(nodes);
    return field;
}

PhaseField PhaseField::constant(double phi_deg) {
    if (!std::isfinite(phi_deg)) throw Error("constant phase must be finite");
    PhaseField field;
    field.constant_ = phi_deg;
    return field;
}

double PhaseField::evaluate(Point2 p) const {
    if (nodes_.empty()) return constant_;
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& node : nodes_) {
        const double dx = p.x - node.location.x;
        const double dy = p.y - node.location.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 == 0.0) return node.phi_deg;
        const double w = 1.0 / d2;
        weighted += w * node.phi_deg;
        total += w;
    }
    return weighted / total;
}

PhaseField interpolate_phase(const PlacementMap& placements, std::span<const double> phi_deg) {
    if (placements.size() != phi_deg.size()) throw DimensionError(placements.size(), phi_deg.size());
    std::vector<PhaseField::Node> nodes;
    nodes.reserve(placements.size());
    for (std::size_t i = 0; i < placements.size(); ++i) {
        nodes.push_back({placements[i].location, phi_deg[i]});
    }
    return PhaseField::inverse_distance(std::move(nodes));
}

RasterGrid::RasterGrid(std::size_t width, std::size_t height, Window window)
    : width_(width), height_(height), window_(window) {
    if (width < 2 || height < 2) throw Error("raster resolution must be at least 2x2");
    const bool finite = std::isfinite(window.x_min) && std::isfinite(window.x_max) &&
                        std::isfinite(window.y_min) && std::isfinite(window.y_max);
    if (!finite || !(window.x_min < window.x_max) || !(window.y_min < window.y_max)) {
        throw Error("degenerate raster window");
    }
    values_.assign(width * height, 0.0);
}

Point2 RasterGrid::pixel_center(std::size_t col, std::size_t row) const {
    const double dx = (window_.x_max - window_.x_min) / static_cast<double>(width_);
    const double dy = (window_.y_max - window_.y_min) / static_cast<double>(height_);
    return {window_.x_min + (static_cast<double>(col) + 0.5) * dx,
            window_.y_max - (static_cast<double>(row) + 0.5) * dy};
}

std::pair<std::size_t, std::size_t> RasterGrid::pixel_of(Point2 p) const {
    const double fx = (p.x - window_.x_min) / (window_.x_max - window_.x_min);
    const double fy = (window_.y_max - p.y) / (window_.y_max - window_.y_min);
    const auto index = [](double f, std::size_t count) {
        const double scaled = std::floor(f * static_cast<double>(count));
        return static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(count - 1)));
    };
    return {index(fx, width_), index(fy, height_)};
}

Window default_window(const PlacementMap& placements, const FieldPair& fields) {
    Window w{fields.a.center().x, fields.a.center().x, fields.a.center().y, fields.a.center().y};
    const auto include = [&](Point2 p) {
        w.x_min = std::min(w.x_min, p.x);
        w.x_max = std::max(w.x_max, p.x);
        w.y_min = std::min(w.y_min, p.y);
        w.y_max = std::max(w.y_max, p.y);
    };
    include(fields.b.center());
    for (const auto& p : placements) include(p.location);
    const double pad = 2.0 * std::max(fields.a.sigma(), fields.b.sigma());
    return {w.x_min - pad, w.x_max + pad, w.y_min - pad, w.y_max + pad};
}

RenderedGrids render_grids(const FieldPair& fields, const PhaseField& phase, const Window& window,
                           std::size_t width, std::size_t height) {
    RenderedGrids out{RasterGrid(width, height, window), RasterGrid(width, height, window),
                      RasterGrid(width, height, window), RasterGrid(width, height, window)};

    const auto render_rows = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t row = row_begin; row < row_end; ++row) {
            for (std::size_t col = 0; col < width; ++col) {
                const Point2 p = out.a_only.pixel_center(col, row);
                const double ga = fields.a.intensity(p);
                const double gb = fields.b.intensity(p);
                const double classical = 0.5 * (ga + gb);
                out.a_only.at(col, row) = ga;
                out.b_only.at(col, row) = gb;
                out.classical.at(col, row) = classical;
                out.interference.at(col, row) =
                    classical + std::sqrt(ga * gb) * cos_deg(phase.evaluate(p));
            }
        }
    };

    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, height / 16));
    if (workers <= 1) {
        render_rows(0, height);
        return out;
    }
    std::vector<std::future<void>> jobs;
    const std::size_t band = (height + workers - 1) / workers;
    for (std::size_t begin = 0; begin < height; begin += band) {
        jobs.push_back(std::async(std::launch::async, render_rows, begin, std::min(height, begin + band)));
    }
    for (auto& job : jobs) job.get();
    return out;
}

} // namespace conceptq
