#include "vmafc/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vmafc/errors.hpp"

namespace vmafc {

Image to_image(const PlaneBuffer& plane) {
  Image out(plane.width(), plane.height());
  const auto src = plane.samples();
  for (std::size_t i = 0; i < src.size(); ++i) out.data[i] = src[i];
  return out;
}

std::vector<double> gaussian_kernel(int length, double sigma) {
  if (length < 1 || length % 2 == 0) throw DomainError("gaussian window length must be odd");
  std::vector<double> taps(static_cast<std::size_t>(length));
  const int half = length / 2;
  for (int i = 0; i < length; ++i) {
    const double x = i - half;
    taps[i] = std::exp(-(x * x) / (2.0 * sigma * sigma));
  }
  const double sum = std::accumulate(taps.begin(), taps.end(), 0.0);
  for (auto& t : taps) t /= sum;
  return taps;
}

namespace {

// Vertical pass over rows [y0, y1) of the output, accumulating whole rows so
// the inner loop vectorizes.
void vertical_pass(const Image& src, Image& dst, std::span<const double> taps, int offset,
                   bool reflect) {
  const int k = static_cast<int>(taps.size());
  const int w = src.width;
  for (int y = 0; y < dst.height; ++y) {
    double* out = dst.row(y);
    std::fill(out, out + w, 0.0);
    for (int t = 0; t < k; ++t) {
      int sy = y + t - offset;
      if (reflect) sy = reflect_index(sy, src.height);
      const double* in = src.row(sy);
      const double c = taps[t];
      for (int x = 0; x < w; ++x) out[x] += c * in[x];
    }
  }
}

}  // namespace

Image filter_separable(const Image& src, std::span<const double> taps) {
  const int k = static_cast<int>(taps.size());
  const int half = k / 2;
  const int w = src.width;
  Image tmp(w, src.height);
  vertical_pass(src, tmp, taps, half, true);

  Image dst(w, src.height);
  std::vector<double> padded(static_cast<std::size_t>(w + 2 * half));
  for (int y = 0; y < src.height; ++y) {
    const double* in = tmp.row(y);
    for (int x = -half; x < w + half; ++x) padded[x + half] = in[reflect_index(x, w)];
    double* out = dst.row(y);
    std::fill(out, out + w, 0.0);
    for (int t = 0; t < k; ++t) {
      const double c = taps[t];
      const double* p = padded.data() + t;
      for (int x = 0; x < w; ++x) out[x] += c * p[x];
    }
  }
  return dst;
}

Image filter_separable_valid(const Image& src, std::span<const double> taps) {
  const int k = static_cast<int>(taps.size());
  if (src.width < k || src.height < k) throw GeometryError("image smaller than filter window");
  Image tmp(src.width, src.height - k + 1);
  vertical_pass(src, tmp, taps, 0, false);
  Image dst(src.width - k + 1, tmp.height);
  for (int y = 0; y < dst.height; ++y) {
    const double* in = tmp.row(y);
    double* out = dst.row(y);
    std::fill(out, out + dst.width, 0.0);
    for (int t = 0; t < k; ++t) {
      const double c = taps[t];
      const double* p = in + t;
      for (int x = 0; x < dst.width; ++x) out[x] += c * p[x];
    }
  }
  return dst;
}

Image decimate2(const Image& src) {
  Image dst((src.width + 1) / 2, (src.height + 1) / 2);
  for (int y = 0; y < dst.height; ++y) {
    const double* in = src.row(2 * y);
    double* out = dst.row(y);
    for (int x = 0; x < dst.width; ++x) out[x] = in[2 * x];
  }
  return dst;
}

Image multiply(const Image& a, const Image& b) {
  Image out(a.width, a.height);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] * b.data[i];
  return out;
}

}  // namespace vmafc
