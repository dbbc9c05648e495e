#include "ideal/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace ideal {

namespace {

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string num(double x) { return fmt("%.3f", x); }

std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * t));
  const int b = static_cast<int>(std::lround(255 * (1 - t)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x30%02x", r, b);
  return buf;
}

}  // namespace

std::string render_svg(const IdealPolyhedron& p, double width) {
  const auto& cfg = p.configuration();
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (int v = 0; v < cfg.size(); ++v) {
    if (v == kInfinityVertex) continue;
    const Complex z = cfg[v].value();
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double margin = 0.08 * width;
  const double scale = (width - 2 * margin) / span;
  const double height = (ymax - ymin) * scale + 2 * margin;
  // y grows downward in SVG.
  const auto X = [&](Complex z) { return margin + (z.real() - xmin) * scale; };
  const auto Y = [&](Complex z) { return height - margin - (z.imag() - ymin) * scale; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  out += "<!-- stroke colour: angle/pi from blue (0) to red (1); bold: hull; dashed: merged-face diagonal -->\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const MarkedTriangulation& t = p.triangulation();
  for (const Edge& e : t.edges()) {
    if (e.u == kInfinityVertex || e.v == kInfinityVertex) continue;
    const Complex a = cfg[e.u].value(), b = cfg[e.v].value();
    const Quad q = t.quad(e);
    const bool on_hull = q.b == kInfinityVertex || q.d == kInfinityVertex;
    std::string style;
    if (p.is_flat(e)) {
      style = "stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6,4\"";
    } else {
      style = "stroke=\"" + ramp(p.angle(e) / std::numbers::pi) + "\" stroke-width=\"" + (on_hull ? "3.5" : "1.5") + "\"";
    }
    out += "<line x1=\"" + num(X(a)) + "\" y1=\"" + num(Y(a)) + "\" x2=\"" + num(X(b)) + "\" y2=\"" + num(Y(b)) + "\" " +
           style + "><title>" + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) + " angle " +
           fmt("%.6f", p.angle(e)) + "</title></line>\n";
  }
  for (int v = 0; v < cfg.size(); ++v) {
    if (v == kInfinityVertex) continue;
    const Complex z = cfg[v].value();
    out += "<circle cx=\"" + num(X(z)) + "\" cy=\"" + num(Y(z)) + "\" r=\"4\" fill=\"black\"/>\n";
    out += "<text x=\"" + num(X(z) + 6) + "\" y=\"" + num(Y(z) - 6) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
           std::to_string(v + 1) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace ideal
