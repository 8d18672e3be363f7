#pragma once

#include "multibrot/angle.hpp"
#include "multibrot/lamination.hpp"
#include "multibrot/numerics.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace multibrot {

struct Viewport {
  double xmin = -2.2, xmax = 0.8;
  double ymin = -1.5, ymax = 1.5;
};

struct RenderOptions {
  int size = 800;  // image width in pixels; height follows the viewport
  Viewport viewport;
  int max_iter = 256;
  std::vector<Angle> overlay_rays;
  double stroke_width = 0.006;       // lamination stroke, disk units
  bool straight_chords = false;      // chords instead of hyperbolic geodesics
  TraceOptions trace;                // used for overlay rays
};

// The lamination as a standalone SVG: unit circle, every leaf drawn as the
// geodesic through its endpoint angles, Misiurewicz groups as geodesic
// polygons, strokes colored by period. Byte-stable for fixed inputs.
std::string lamination_svg(const Lamination& lam,
                           const RenderOptions& opts = {});

struct RasterImage {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major
  std::map<std::string, std::string> metadata;
};

// Escape-time rendering of the degree-d set over the viewport with traced
// parameter rays overlaid; stalled rays are drawn partially and flagged in
// the metadata.
RasterImage set_image(int degree, const RenderOptions& opts = {});

// PNG with the metadata embedded as tEXt chunks.
std::string encode_png(const RasterImage& img);

// Portable pixmap fallback; metadata rides in comment lines.
std::string encode_ppm(const RasterImage& img);

}  // namespace multibrot
