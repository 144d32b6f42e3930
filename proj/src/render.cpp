#include "ufg/render.hpp"

#include <cstdio>
#include <sstream>

namespace ufg {

namespace {

std::string building_fill(int stories) {
  // Taller buildings render darker.
  const int level = 190 - 22 * (stories - 1);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level - 30, level - 20, level);
  return buf;
}

}  // namespace

std::string render_svg(const MapLayout& layout) {
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvasUnits << "\" height=\"" << kCanvasUnits
      << "\" viewBox=\"0 0 " << kCanvasUnits << ' ' << kCanvasUnits << "\">\n";
  svg << "<rect width=\"" << kCanvasUnits << "\" height=\"" << kCanvasUnits << "\" fill=\"#2b2b2b\"/>\n";

  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      const Cell& cell = layout.at({r, c});
      const int x = kMarginUnits + c * kCellUnits;
      const int y = kMarginUnits + r * kCellUnits;
      std::string fill;
      switch (cell.content) {
        case CellContent::Street: fill = "#8c8c8c"; break;
        case CellContent::Free: fill = "#b9d7a0"; break;
        case CellContent::Building: fill = building_fill(cell.height_stories); break;
      }
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCellUnits << "\" height=\"" << kCellUnits
          << "\" fill=\"" << fill << "\"/>\n";
      for (const auto& p : cell.props) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"#5a3b1c\"/>\n",
                      x + p.u * kCellUnits, y + p.v * kCellUnits);
        svg << buf;
      }
    }
  }

  const char* names[] = {"A", "B"};
  const char* colors[] = {"#d62728", "#1f77b4"};
  for (int team = 0; team < 2; ++team) {
    const CellCoord s = layout.spawns[static_cast<std::size_t>(team)];
    const double cx = kMarginUnits + (s.col + 0.5) * kCellUnits;
    const double cy = kMarginUnits + (s.row + 0.5) * kCellUnits;
    svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"10\" fill=\"" << colors[team] << "\"/>\n";
    svg << "<text x=\"" << cx << "\" y=\"" << cy + 5 << "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#fff\">"
        << names[team] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ufg
