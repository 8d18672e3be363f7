#include "multibrot/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace multibrot {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Fixed palette cycled by period, so re-renders are byte-identical.
const char* const kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#ff9896",
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v == 0.0 ? 0.0 : v);  // avoid -0
  return buf;
}

struct Pt {
  double x, y;
};

Pt circle_point(const Angle& a) {
  double t = kTau * a.to_double();
  // SVG y grows downward; flip so increasing angles run counterclockwise.
  return {std::cos(t), -std::sin(t)};
}

// One edge of the lamination as a path segment from a to b: a straight
// chord for (near-)antipodal pairs, otherwise the arc of the circle
// orthogonal to the unit circle (the hyperbolic geodesic).
std::string edge_path(const Angle& a, const Angle& b, bool straight) {
  Pt p1 = circle_point(a);
  Pt p2 = circle_point(b);
  double dot = p1.x * p2.x + p1.y * p2.y;
  if (straight || dot < -1.0 + 1e-12) {
    return "M " + fmt(p1.x) + " " + fmt(p1.y) + " L " + fmt(p2.x) + " " +
           fmt(p2.y);
  }
  if (dot > 1.0 - 1e-12) {  // degenerate pair: a tick at the shared point
    return "M " + fmt(p1.x) + " " + fmt(p1.y) + " L " + fmt(p1.x * 1.06) + " " +
           fmt(p1.y * 1.06);
  }
  double denom = 1.0 + dot;
  Pt center{(p1.x + p2.x) / denom, (p1.y + p2.y) / denom};
  double radius = std::sqrt(center.x * center.x + center.y * center.y - 1.0);
  double cross = (p1.x - center.x) * (p2.y - center.y) -
                 (p1.y - center.y) * (p2.x - center.x);
  int sweep = cross > 0 ? 1 : 0;
  return "M " + fmt(p1.x) + " " + fmt(p1.y) + " A " + fmt(radius) + " " +
         fmt(radius) + " 0 0 " + std::string(sweep ? "1" : "0") + " " +
         fmt(p2.x) + " " + fmt(p2.y);
}

}  // namespace

std::string lamination_svg(const Lamination& lam, const RenderOptions& opts) {
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n";
  svg << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" "
         "stroke-width=\""
      << fmt(opts.stroke_width) << "\"/>\n";
  auto color_for = [&](int period) {
    return kPalette[(period - 1) % (sizeof(kPalette) / sizeof(kPalette[0]))];
  };
  for (const auto& c : lam.components()) {
    svg << "<path d=\"" << edge_path(c.root.lower, c.root.upper, opts.straight_chords)
        << "\" fill=\"none\" stroke=\"" << color_for(c.period)
        << "\" stroke-width=\"" << fmt(opts.stroke_width) << "\" data-n=\""
        << c.period << "\"/>\n";
  }
  for (const auto& m : lam.misiurewicz_nodes()) {
    std::string d;
    int r = m.gap_count();
    if (r == 1) {
      Pt p = circle_point(m.angles.front());
      d = "M " + fmt(p.x) + " " + fmt(p.y) + " L " + fmt(p.x * 0.94) + " " +
          fmt(p.y * 0.94);
    } else {
      for (int i = 0; i < r; ++i) {
        const Angle& a = m.angles[i];
        const Angle& b = m.angles[(i + 1) % r];
        if (r == 2 && i == 1) break;  // a single chord, not two
        if (!d.empty()) d += " ";
        d += edge_path(a, b, opts.straight_chords);
      }
    }
    svg << "<path d=\"" << d << "\" fill=\"none\" stroke=\""
        << color_for(m.period) << "\" stroke-width=\""
        << fmt(opts.stroke_width * 0.75) << "\" stroke-dasharray=\"0.02 0.012\" data-l=\""
        << m.preperiod << "\" data-n=\"" << m.period << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

void put_pixel(RasterImage& img, int x, int y, std::uint8_t r, std::uint8_t g,
               std::uint8_t b) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  std::size_t i = 3 * (static_cast<std::size_t>(y) * img.width + x);
  img.rgb[i] = r;
  img.rgb[i + 1] = g;
  img.rgb[i + 2] = b;
}

void draw_segment(RasterImage& img, double x0, double y0, double x1, double y1,
                  std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  double len = std::max(std::abs(x1 - x0), std::abs(y1 - y0));
  int steps = std::max(1, static_cast<int>(std::ceil(len)));
  for (int s = 0; s <= steps; ++s) {
    double t = static_cast<double>(s) / steps;
    put_pixel(img, static_cast<int>(std::lround(x0 + t * (x1 - x0))),
              static_cast<int>(std::lround(y0 + t * (y1 - y0))), r, g, b);
  }
}

}  // namespace

RasterImage set_image(int degree, const RenderOptions& opts) {
  const Viewport& vp = opts.viewport;
  if (opts.size < 1 || !(vp.xmax > vp.xmin) || !(vp.ymax > vp.ymin))
    throw std::invalid_argument("set_image needs a positive size and viewport");
  RasterImage img;
  img.width = opts.size;
  img.height = std::max(
      1, static_cast<int>(std::lround(opts.size * (vp.ymax - vp.ymin) /
                                      (vp.xmax - vp.xmin))));
  img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);

  double px = (vp.xmax - vp.xmin) / img.width;
  double py = (vp.ymax - vp.ymin) / img.height;
  for (int y = 0; y < img.height; ++y) {
    double im = vp.ymax - (y + 0.5) * py;
    for (int x = 0; x < img.width; ++x) {
      Complex c{vp.xmin + (x + 0.5) * px, im};
      auto it = escape_iterations(c, degree, opts.max_iter,
                                  default_escape_radius(degree, c));
      if (!it) {
        put_pixel(img, x, y, 0, 0, 0);
      } else {
        double v = std::fmod(std::sqrt(static_cast<double>(*it)), 1.0);
        auto ramp = [](double t) {
          return static_cast<std::uint8_t>(
              std::lround(255.0 * (0.5 - 0.5 * std::cos(kTau * t))));
        };
        put_pixel(img, x, y, ramp(v), ramp(v + 0.33), ramp(v + 0.66));
      }
    }
  }

  img.metadata["degree"] = std::to_string(degree);
  img.metadata["viewport"] = fmt(vp.xmin) + " " + fmt(vp.xmax) + " " +
                             fmt(vp.ymin) + " " + fmt(vp.ymax);
  std::string rays;
  for (const Angle& a : opts.overlay_rays) {
    TracedRay tr = trace_parameter_ray(degree, a, opts.trace);
    for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
      auto to_px = [&](Complex z, double* ox, double* oy) {
        *ox = (z.real() - vp.xmin) / px - 0.5;
        *oy = (vp.ymax - z.imag()) / py - 0.5;
      };
      double x0, y0, x1, y1;
      to_px(tr.points[i], &x0, &y0);
      to_px(tr.points[i + 1], &x1, &y1);
      draw_segment(img, x0, y0, x1, y1, 255, 255, 255);
    }
    if (!rays.empty()) rays += ",";
    rays += a.str() + (tr.stalled ? ":stalled" : ":landed");
  }
  img.metadata["rays"] = rays;
  return img;
}

std::string encode_ppm(const RasterImage& img) {
  std::ostringstream os;
  os << "P6\n";
  for (const auto& [k, v] : img.metadata) os << "# " << k << " " << v << "\n";
  os << img.width << " " << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.rgb.data()),
           static_cast<std::streamsize>(img.rgb.size()));
  return os.str();
}

}  // namespace multibrot
