#include "latticewave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latticewave/errors.hpp"

namespace lw {

namespace {

constexpr double kCanvas = 480.0;
constexpr double kMargin = 24.0;

const char* kPalette[] = {"#4878a8", "#e49444", "#6a9f58",
                          "#d1605e", "#85578b", "#b8b0ac"};

struct Frame {
  double xmin, xmax, ymin, ymax, scale;
  double px(double x) const { return kMargin + (x - xmin) * scale; }
  double py(double y) const { return kMargin + (ymax - y) * scale; }
};

std::string value_label(const ExactValue& v) {
  std::string s = format_rational(v.m);
  if (v.e) s += "*sqrt(2)";
  return s;
}

void emit_piece(std::ostringstream& out, const Polytope& p, const Frame& f,
                const char* color) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& v : p.vertices())
    pts.push_back({to_double(v[0]), to_double(v[1])});
  if (pts.size() < 3) return;
  double cx = 0, cy = 0;
  for (auto& q : pts) {
    cx += q.first;
    cy += q.second;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    return std::atan2(a.second - cy, a.first - cx) <
           std::atan2(b.second - cy, b.first - cx);
  });
  out << "  <polygon points=\"";
  for (const auto& q : pts)
    out << f.px(q.first) << "," << f.py(q.second) << " ";
  out << "\" fill=\"" << color
      << "\" fill-opacity=\"0.75\" stroke=\"#333\" stroke-width=\"1\"/>\n";
}

std::string render(const FrequencySet& s, const std::vector<ExactValue>* vals) {
  if (s.n != 2) throw DimensionMismatch("render_svg: n = 2 required");

  Frame f{-1, 1, -1, 1, 1};
  bool first = true;
  for (const auto& p : s.pieces) {
    auto [lo, hi] = p.bbox();
    double xl = to_double(lo[0]), xh = to_double(hi[0]);
    double yl = to_double(lo[1]), yh = to_double(hi[1]);
    if (first || xl < f.xmin) f.xmin = xl;
    if (first || xh > f.xmax) f.xmax = xh;
    if (first || yl < f.ymin) f.ymin = yl;
    if (first || yh > f.ymax) f.ymax = yh;
    first = false;
  }
  double span = std::max({f.xmax - f.xmin, f.ymax - f.ymin, 1e-9});
  f.scale = (kCanvas - 2 * kMargin) / span;

  // Deterministic legend: one color per distinct value, ordered by first
  // appearance; plain sets render as a single-color figure.
  std::vector<ExactValue> legend;
  auto color_of = [&](std::size_t piece_idx) -> const char* {
    if (!vals) return kPalette[0];
    const ExactValue& v = (*vals)[piece_idx];
    for (std::size_t i = 0; i < legend.size(); ++i)
      if (legend[i] == v) return kPalette[i % 6];
    legend.push_back(v);
    return kPalette[(legend.size() - 1) % 6];
  };

  std::ostringstream out;
  double height = kCanvas + (vals ? 20.0 * 4 : 0.0);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << kCanvas << " "
      << height << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < s.pieces.size(); ++i)
    emit_piece(out, s.pieces[i], f, color_of(i));
  if (vals) {
    double y = kCanvas + 14;
    for (std::size_t i = 0; i < legend.size(); ++i, y += 18) {
      out << "  <rect x=\"" << kMargin << "\" y=\"" << y - 10
          << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[i % 6]
          << "\"/>\n";
      out << "  <text x=\"" << kMargin + 18 << "\" y=\"" << y
          << "\" font-family=\"monospace\" font-size=\"12\">"
          << value_label(legend[i]) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_svg(const FrequencySet& s) { return render(s, nullptr); }

std::string render_svg(const PiecewiseWavelet& w) {
  return render(w.support, &w.values);
}

}  // namespace lw
