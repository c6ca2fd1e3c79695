#pragma once

#include <array>

#include "vmafc/image.hpp"
#include "vmafc/plane.hpp"

namespace vmafc {

inline constexpr int kVifScales = 4;

struct VifConfig {
  double sigma_noise_sq = 2.0;
  /// Gaussian window length per scale, finest first; sigma = length / 5.
  std::array<int, kVifScales> window_sizes{17, 9, 5, 3};

  void validate() const;
};

struct VifScores {
  std::array<double, kVifScales> scale{};
  double overall = 0.0;

  double s0() const { return scale[0]; }
  double s1() const { return scale[1]; }
  double s2() const { return scale[2]; }
  double s3() const { return scale[3]; }
};

/// Pixel-domain VIF at four dyadic scales (s0 finest).
VifScores vif_multiscale(const PlaneBuffer& ref, const PlaneBuffer& dist,
                         const VifConfig& cfg = {});
VifScores vif_multiscale(const Image& ref, const Image& dist, const VifConfig& cfg = {});

}  // namespace vmafc
