#include "vmafc/vif.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "vmafc/errors.hpp"

namespace vmafc {
namespace {

constexpr double kGainEpsilon = 1e-10;
// Local variances below this are rounding noise from E[x^2] - E[x]^2.
constexpr double kVarianceFloor = 1e-10;
constexpr int kMinSide = 32;

struct ScaleSums {
  double num = 0.0;
  double den = 0.0;
};

// Streams the image row by row: the five local moments are filtered
// vertically then horizontally into row buffers and reduced immediately.
ScaleSums vif_scale(const Image& ref, const Image& dist, std::span<const double> taps,
                    double sigma_n_sq) {
  const int w = ref.width;
  const int h = ref.height;
  const int k = static_cast<int>(taps.size());
  const int half = k / 2;
  const std::size_t padded_w = static_cast<std::size_t>(w + 2 * half);

  // Vertical results, padded horizontally by reflection.
  std::array<std::vector<double>, 5> vert;
  for (auto& v : vert) v.assign(padded_w, 0.0);
  std::array<std::vector<double>, 5> horiz;
  for (auto& v : horiz) v.assign(static_cast<std::size_t>(w), 0.0);

  ScaleSums sums;
  for (int y = 0; y < h; ++y) {
    double* vr = vert[0].data() + half;
    double* vd = vert[1].data() + half;
    double* vrr = vert[2].data() + half;
    double* vdd = vert[3].data() + half;
    double* vrd = vert[4].data() + half;
    std::fill(vr, vr + w, 0.0);
    std::fill(vd, vd + w, 0.0);
    std::fill(vrr, vrr + w, 0.0);
    std::fill(vdd, vdd + w, 0.0);
    std::fill(vrd, vrd + w, 0.0);
    for (int t = 0; t < k; ++t) {
      const int sy = reflect_index(y + t - half, h);
      const double* r = ref.row(sy);
      const double* d = dist.row(sy);
      const double c = taps[t];
      for (int x = 0; x < w; ++x) {
        const double a = r[x];
        const double b = d[x];
        vr[x] += c * a;
        vd[x] += c * b;
        vrr[x] += c * (a * a);
        vdd[x] += c * (b * b);
        vrd[x] += c * (a * b);
      }
    }
    for (int m = 0; m < 5; ++m) {
      double* row = vert[m].data() + half;
      for (int x = 1; x <= half; ++x) {
        row[-x] = row[reflect_index(-x, w)];
        row[w - 1 + x] = row[reflect_index(w - 1 + x, w)];
      }
      double* out = horiz[m].data();
      std::fill(out, out + w, 0.0);
      for (int t = 0; t < k; ++t) {
        const double c = taps[t];
        const double* p = vert[m].data() + t;
        for (int x = 0; x < w; ++x) out[x] += c * p[x];
      }
    }

    for (int x = 0; x < w; ++x) {
      const double mr = horiz[0][x];
      const double md = horiz[1][x];
      double var_r = horiz[2][x] - mr * mr;
      double var_d = horiz[3][x] - md * md;
      if (var_r < kVarianceFloor) var_r = 0.0;
      if (var_d < kVarianceFloor) var_d = 0.0;
      const double cov = horiz[4][x] - mr * md;
      const double g = cov / (var_r + kGainEpsilon);
      const double v = std::max(0.0, var_d - g * cov);
      sums.num += std::log2(1.0 + g * g * var_r / (v + sigma_n_sq));
      sums.den += std::log2(1.0 + var_r / sigma_n_sq);
    }
  }
  return sums;
}

}  // namespace

void VifConfig::validate() const {
  if (!(sigma_noise_sq > 0.0)) throw DomainError("vif: sigma_noise_sq must be positive");
  for (int w : window_sizes) {
    if (w < 1 || w % 2 == 0) throw DomainError("vif: window lengths must be odd and positive");
  }
}

VifScores vif_multiscale(const Image& ref, const Image& dist, const VifConfig& cfg) {
  cfg.validate();
  if (ref.width != dist.width || ref.height != dist.height) {
    throw GeometryError("vif: plane size mismatch");
  }
  if (ref.width < kMinSide || ref.height < kMinSide) {
    throw GeometryError("vif: planes must be at least 32x32 for four scales");
  }

  VifScores out;
  double num_total = 0.0;
  double den_total = 0.0;
  // Centre both planes on the reference mean to keep E[x^2] - E[x]^2 well
  // conditioned; every statistic used below is shift invariant.
  double offset = 0.0;
  for (double v : ref.data) offset += v;
  offset /= static_cast<double>(ref.data.size());
  Image r = ref;
  Image d = dist;
  for (auto& v : r.data) v -= offset;
  for (auto& v : d.data) v -= offset;
  for (int s = 0; s < kVifScales; ++s) {
    if (s > 0) {
      // Low-pass with this scale's window, then keep every other sample.
      const auto lp = gaussian_kernel(cfg.window_sizes[s], cfg.window_sizes[s] / 5.0);
      r = decimate2(filter_separable(r, lp));
      d = decimate2(filter_separable(d, lp));
    }
    const auto taps = gaussian_kernel(cfg.window_sizes[s], cfg.window_sizes[s] / 5.0);
    const ScaleSums sums = vif_scale(r, d, taps, cfg.sigma_noise_sq);
    // No information in the reference means none can be lost.
    out.scale[s] = sums.den > 0.0 ? sums.num / sums.den : 1.0;
    num_total += sums.num;
    den_total += sums.den;
  }
  out.overall = den_total > 0.0 ? num_total / den_total : 1.0;
  return out;
}

VifScores vif_multiscale(const PlaneBuffer& ref, const PlaneBuffer& dist, const VifConfig& cfg) {
  if (!ref.same_geometry(dist)) throw GeometryError("vif: plane size mismatch");
  return vif_multiscale(to_image(ref), to_image(dist), cfg);
}

}  // namespace vmafc
