#pragma once

#include <span>
#include <vector>

#include "vmafc/plane.hpp"

namespace vmafc {

/// Double-precision working image used inside the metrics.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Image() = default;
  Image(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  double* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }
  const double* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }
};

Image to_image(const PlaneBuffer& plane);

/// Half-sample symmetric boundary: -1 -> 0, n -> n-1.
inline int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

/// Normalized 1-D Gaussian taps.
std::vector<double> gaussian_kernel(int length, double sigma);

/// Separable correlation with symmetric boundary extension, same-size output.
Image filter_separable(const Image& src, std::span<const double> taps);

/// Separable correlation keeping only fully-covered positions.
Image filter_separable_valid(const Image& src, std::span<const double> taps);

/// Keep every second sample in both dimensions, starting at 0.
Image decimate2(const Image& src);

Image multiply(const Image& a, const Image& b);

}  // namespace vmafc
