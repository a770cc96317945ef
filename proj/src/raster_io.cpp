#include "conceptq/raster_io.hpp"

#include "conceptq/error.hpp"
#include "conceptq/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace conceptq {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string csv_name(const std::string& name) {
    if (name.find_first_of(",\"") == std::string::npos) return name;
    std::string quoted = "\"";
    for (char ch : name) {
        if (ch == '"') quoted.push_back('"');
        quoted.push_back(ch);
    }
    return quoted + "\"";
}

} // namespace

void write_grid_csv(std::ostream& out, const RasterGrid& grid) {
    const auto& w = grid.window();
    out << format_double(w.x_min) << ',' << format_double(w.x_max) << ','
        << format_double(w.y_min) << ',' << format_double(w.y_max) << ',' << grid.width() << ','
        << grid.height() << '\n';
    for (std::size_t row = 0; row < grid.height(); ++row) {
        for (std::size_t col = 0; col < grid.width(); ++col) {
            if (col) out << ',';
            out << format_double(grid.at(col, row));
        }
        out << '\n';
    }
}

RasterGrid read_grid_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw ParseError(line_no, "empty grid file");
    const auto header = split_commas(trim(line));
    if (header.size() != 6) throw ParseError(line_no, "grid header needs 6 fields");
    std::vector<double> h;
    for (auto field : header) {
        const auto v = parse_double(field);
        if (!v) throw ParseError(line_no, "non-numeric grid header field");
        h.push_back(*v);
    }
    const auto width = static_cast<std::size_t>(h[4]);
    const auto height = static_cast<std::size_t>(h[5]);
    if (static_cast<double>(width) != h[4] || static_cast<double>(height) != h[5]) {
        throw ParseError(line_no, "grid dimensions must be integers");
    }
    RasterGrid grid(width, height, {h[0], h[1], h[2], h[3]});
    for (std::size_t row = 0; row < height; ++row) {
        ++line_no;
        if (!std::getline(in, line)) throw ParseError(line_no, "missing grid row");
        const auto fields = split_commas(trim(line));
        if (fields.size() != width) throw ParseError(line_no, "wrong grid row width");
        for (std::size_t col = 0; col < width; ++col) {
            const auto v = parse_double(fields[col]);
            if (!v) throw ParseError(line_no, "non-numeric grid value");
            grid.at(col, row) = *v;
        }
    }
    return grid;
}

std::vector<unsigned char> to_gray_levels(const RasterGrid& grid) {
    const auto values = grid.values();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double range = *hi - *lo;
    std::vector<unsigned char> out(values.size(), 0);
    if (!(range > 0.0)) return out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double level = std::round(255.0 * (values[i] - min) / range);
        out[i] = static_cast<unsigned char>(std::clamp(level, 0.0, 255.0));
    }
    return out;
}

void write_pgm(std::ostream& out, const RasterGrid& grid) {
    out << "P5\n" << grid.width() << ' ' << grid.height() << "\n255\n";
    const auto levels = to_gray_levels(grid);
    out.write(reinterpret_cast<const char*>(levels.data()), static_cast<std::streamsize>(levels.size()));
}

void write_placements_csv(std::ostream& out, const PlacementMap& placements) {
    out << "exemplar,x,y,residual\n";
    for (const auto& p : placements) {
        out << csv_name(p.name) << ',' << format_double(p.location.x) << ','
            << format_double(p.location.y) << ',' << format_double(p.residual) << '\n';
    }
}

} // namespace conceptq
