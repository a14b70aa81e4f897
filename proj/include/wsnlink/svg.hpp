#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "wsnlink/csv.hpp"
#include "wsnlink/link.hpp"

namespace wsnlink::svg {

struct Series {
  std::string label;
  std::vector<CurvePoint> points;
};

namespace detail {

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
inline double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                           "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace detail

/// Overlay of PRR curves on linear axes; y is fixed to [0, 1].
inline std::string render(const std::string& title, const std::string& x_label,
                          const std::vector<Series>& series) {
  constexpr double W = 720, H = 480, L = 70, R = 170, T = 40, B = 60;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
    }
  if (!(x_lo < x_hi)) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  const double pw = W - L - R, ph = H - T - B;
  auto sx = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return T + (1.0 - y) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << detail::escape(title) << "</text>\n"
    << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = detail::nice_step(x_hi - x_lo, 8);
  for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-9 * xs; x += xs) {
    o << "<line x1=\"" << sx(x) << "\" y1=\"" << T + ph << "\" x2=\"" << sx(x) << "\" y2=\""
      << T + ph + 5 << "\" stroke=\"black\"/>"
      << "<text x=\"" << sx(x) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">"
      << csv::number(std::abs(x) < 1e-12 ? 0.0 : x) << "</text>\n";
  }
  for (int i = 0; i <= 10; ++i) {
    const double y = i / 10.0;
    o << "<line x1=\"" << L - 5 << "\" y1=\"" << sy(y) << "\" x2=\"" << L << "\" y2=\"" << sy(y)
      << "\" stroke=\"black\"/>"
      << "<text x=\"" << L - 8 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">"
      << csv::number(y) << "</text>\n";
  }
  o << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
    << detail::escape(x_label) << "</text>\n"
    << "<text x=\"18\" y=\"" << T + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << T + ph / 2 << ")\">PRR</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* colour = detail::kPalette[i % std::size(detail::kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : series[i].points) o << sx(p.x) << ',' << sy(p.prr) << ' ';
    o << "\"/>\n";
    const double ly = T + 14 + 18.0 * static_cast<double>(i);
    o << "<line x1=\"" << L + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 35
      << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>"
      << "<text x=\"" << L + pw + 40 << "\" y=\"" << ly + 4 << "\">"
      << detail::escape(series[i].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace wsnlink::svg
