#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <vector>

#include "visualenv/scene.hpp"

namespace visualenv {

/// 8-bit RGB, row-major, top row first; `rgb` holds 3 * width * height bytes.
struct FrameBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  FrameBuffer() = default;
  FrameBuffer(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t* pixel(int row, int col) {
    return rgb.data() + (static_cast<std::size_t>(row) * width + col) * 3;
  }
  const std::uint8_t* pixel(int row, int col) const {
    return rgb.data() + (static_cast<std::size_t>(row) * width + col) * 3;
  }
  bool operator==(const FrameBuffer&) const = default;
};

/// 8-bit luminance, row-major, top row first.
struct GrayFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayFrame() = default;
  GrayFrame(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  bool operator==(const GrayFrame&) const = default;
};

/// Distance from the camera center along each pixel's primary ray, meters.
struct DepthBuffer {
  int width = 0;
  int height = 0;
  std::vector<double> depth;

  DepthBuffer() = default;
  DepthBuffer(int w, int h)
      : width(w),
        height(h),
        depth(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity()) {}

  double at(int row, int col) const { return depth[static_cast<std::size_t>(row) * width + col]; }
};

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RenderOutput {
  FrameBuffer color;
  DepthBuffer depth;
};

/// One primary ray per pixel center, nearest hit wins, Lambert shading.
/// Throws RenderError if the camera is degenerate.
FrameBuffer render(const Scene& scene);
RenderOutput render_with_depth(const Scene& scene);

/// Rec. 601 luma, rounded half up.
GrayFrame to_grayscale(const FrameBuffer& fb);

Color shade(const Color& albedo, const Vec3& normal, const DirectionalLight& light);

/// Channel value in [0,1] to 8-bit, rounded to nearest.
std::uint8_t to_byte(double channel);

/// Write 8-bit PNGs. Throw std::runtime_error on I/O failure.
void write_png(const std::filesystem::path& path, const GrayFrame& frame);
void write_png(const std::filesystem::path& path, const FrameBuffer& frame);

/// Reads an 8-bit grayscale PNG (converting if needed).
GrayFrame read_png_gray(const std::filesystem::path& path);

}  // namespace visualenv
