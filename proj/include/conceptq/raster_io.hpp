#pragma once

#include "conceptq/wavefield.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace conceptq {

// First line `x_min,x_max,y_min,y_max,width,height`, then `height` rows of
// `width` values at full precision.
void write_grid_csv(std::ostream& out, const RasterGrid& grid);
RasterGrid read_grid_csv(std::istream& in);

// Binary P5, maxval 255, linear min-max normalization of this grid alone.
// A constant grid maps to all zeros.
void write_pgm(std::ostream& out, const RasterGrid& grid);
std::vector<unsigned char> to_gray_levels(const RasterGrid& grid);

// `exemplar,x,y,residual`
void write_placements_csv(std::ostream& out, const PlacementMap& placements);

} // namespace conceptq
