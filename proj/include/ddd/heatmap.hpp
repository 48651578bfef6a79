#pragma once

#include <string>
#include <string_view>

#include "ddd/io.hpp"

namespace ddd {

struct Rgb {
  int r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

/// Cell colour on a white-to-dark-blue ramp; higher values are darker. A
/// degenerate range (max == min) maps every value to the middle shade.
Rgb heatmap_shade(double value, double min, double max);

/// Self-contained SVG grid with row/column labels, per-cell values and the
/// value range. Output bytes depend only on the input.
std::string render_heatmap_svg(const io::LabeledMatrix& matrix, std::string_view title = {});

}  // namespace ddd
