#include "ddd/heatmap.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "ddd/error.hpp"

namespace ddd {

namespace {

constexpr Rgb kLight{247, 251, 255};
constexpr Rgb kDark{8, 48, 107};
constexpr int kCell = 48;
constexpr int kCharWidth = 7;
constexpr int kLegendSteps = 10;

std::string fixed(double value, int digits) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
  return std::string(buf.data(), ptr);
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

std::string hex(const Rgb& c) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "#";
  for (int v : {c.r, c.g, c.b}) {
    out.push_back(kDigits[v / 16]);
    out.push_back(kDigits[v % 16]);
  }
  return out;
}

std::pair<std::string, std::string> axis_names(std::string_view kind) {
  if (kind == "confusion") return {"true class", "predicted class"};
  if (kind == "distance" || kind == "similarity") return {"train class", "test class"};
  return {"row", "column"};
}

std::size_t longest(const std::vector<std::string>& labels) {
  std::size_t n = 0;
  for (const auto& l : labels) n = std::max(n, l.size());
  return n;
}

}  // namespace

Rgb heatmap_shade(double value, double min, double max) {
  double t = 0.5;
  if (max > min) t = std::clamp((value - min) / (max - min), 0.0, 1.0);
  auto mix = [t](int light, int dark) {
    return static_cast<int>(std::lround(light + t * (dark - light)));
  };
  return {mix(kLight.r, kDark.r), mix(kLight.g, kDark.g), mix(kLight.b, kDark.b)};
}

std::string render_heatmap_svg(const io::LabeledMatrix& matrix, std::string_view title) {
  const Matrix& v = matrix.values;
  if (v.empty()) throw Error(ErrorKind::kEmptyInput, "cannot render an empty matrix");

  const auto flat = v.flat();
  const auto [min_it, max_it] = std::minmax_element(flat.begin(), flat.end());
  const double lo = *min_it;
  const double hi = *max_it;

  const int rows = static_cast<int>(v.rows());
  const int cols = static_cast<int>(v.cols());
  const int left = 40 + kCharWidth * static_cast<int>(longest(matrix.row_labels));
  const int top = 60 + kCharWidth * static_cast<int>(longest(matrix.col_labels));
  const int grid_w = cols * kCell;
  const int grid_h = rows * kCell;
  const int width = std::max(left + grid_w + 20, left + kLegendSteps * 20 + 260);
  const int height = top + grid_h + 80;
  const auto [row_axis, col_axis] = axis_names(matrix.kind);

  std::string heading(title);
  if (heading.empty()) {
    heading = matrix.kind;
    if (matrix.alpha) heading += " (alpha = " + io::format_double(*matrix.alpha) + ")";
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"10\" y=\"18\" font-size=\"14\">" + escape_xml(heading) + "</text>\n";
  svg += "<text x=\"" + std::to_string(left + grid_w / 2) + "\" y=\"36\" text-anchor=\"middle\">" +
         escape_xml(col_axis) + "</text>\n";
  svg += "<text x=\"12\" y=\"" + std::to_string(top + grid_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 12 " + std::to_string(top + grid_h / 2) +
         ")\">" + escape_xml(row_axis) + "</text>\n";

  for (int c = 0; c < cols; ++c) {
    const int x = left + c * kCell + kCell / 2;
    const int y = top - 6;
    svg += "<text class=\"col-label\" x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
           "\" text-anchor=\"start\" transform=\"rotate(-60 " + std::to_string(x) + " " +
           std::to_string(y) + ")\">" + escape_xml(matrix.col_labels.at(c)) + "</text>\n";
  }
  for (int r = 0; r < rows; ++r) {
    svg += "<text class=\"row-label\" x=\"" + std::to_string(left - 6) + "\" y=\"" +
           std::to_string(top + r * kCell + kCell / 2 + 4) + "\" text-anchor=\"end\">" +
           escape_xml(matrix.row_labels.at(r)) + "</text>\n";
  }

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double value = v(r, c);
      const Rgb shade = heatmap_shade(value, lo, hi);
      const bool dark = (shade.r + shade.g + shade.b) < 3 * 128;
      const int x = left + c * kCell;
      const int y = top + r * kCell;
      svg += "<rect class=\"cell\" data-row=\"" + std::to_string(r) + "\" data-col=\"" +
             std::to_string(c) + "\" data-value=\"" + io::format_double(value) + "\" x=\"" +
             std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
             std::to_string(kCell) + "\" height=\"" + std::to_string(kCell) + "\" fill=\"" +
             hex(shade) + "\" stroke=\"#ffffff\"/>\n";
      svg += "<text x=\"" + std::to_string(x + kCell / 2) + "\" y=\"" +
             std::to_string(y + kCell / 2 + 4) + "\" text-anchor=\"middle\" fill=\"" +
             (dark ? "#ffffff" : "#000000") + "\">" + fixed(value, 3) + "</text>\n";
    }
  }

  const int legend_y = top + grid_h + 24;
  for (int k = 0; k < kLegendSteps; ++k) {
    const double t = static_cast<double>(k) / (kLegendSteps - 1);
    svg += "<rect class=\"legend\" x=\"" + std::to_string(left + k * 20) + "\" y=\"" +
           std::to_string(legend_y) + "\" width=\"20\" height=\"12\" fill=\"" +
           hex(heatmap_shade(t, 0.0, 1.0)) + "\"/>\n";
  }
  svg += "<text class=\"range\" x=\"" + std::to_string(left + kLegendSteps * 20 + 10) + "\" y=\"" +
         std::to_string(legend_y + 10) + "\">min = " + io::format_double(lo) +
         ", max = " + io::format_double(hi) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace ddd
