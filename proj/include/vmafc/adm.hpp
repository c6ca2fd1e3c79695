#pragma once

#include <array>

#include "vmafc/image.hpp"
#include "vmafc/plane.hpp"
#include "vmafc/video_io.hpp"

namespace vmafc {

inline constexpr int kAdmLevels = 4;

/// Detail subbands of one decomposition level.
enum class Orientation { kHorizontal = 0, kVertical = 1, kDiagonal = 2 };

using CsfTable = std::array<std::array<double, 3>, kAdmLevels>;

/// Reciprocal quantization step of the wavelet-domain visibility model for a
/// level (0 = finest) and orientation, at the given normalized viewing distance
/// (in picture heights) and display height (pixels).
double csf_weight(int level, Orientation orientation, double view_distance,
                  double display_height);
CsfTable default_csf_table(double view_distance = 3.0, double display_height = 1080.0);

struct AdmConfig {
  double angle_threshold_deg = 1.0;
  /// Side of the square masking neighbourhood (odd).
  int masking_size = 3;
  double minkowski_p = 3.0;
  double border_fraction = 0.1;
  CsfTable csf = default_csf_table();

  void validate() const;
};

struct AdmScores {
  std::array<double, kAdmLevels> scale{};
  double overall = 0.0;

  double s0() const { return scale[0]; }
  double s3() const { return scale[3]; }
};

/// One level of the separable Daubechies-2 analysis.
struct DwtBands {
  Image ll, h, v, d;
};
DwtBands dwt2_db2(const Image& src);

AdmScores adm_multiscale(const PlaneBuffer& ref, const PlaneBuffer& dist,
                         const AdmConfig& cfg = {});
AdmScores adm_multiscale(const Image& ref, const Image& dist, const AdmConfig& cfg = {});

/// ceil(x * n) / n for x in (0, 1].
double quantize_feature(double x, int n);

struct QuantizedChromaFeatures {
  double adm_cb_s3 = 0.0;
  double adm_cr_s3 = 0.0;
  double adm_cb_s3_q = 0.0;
  double adm_cr_s3_q = 0.0;
  int n_levels = 0;
};

/// Scale-3 ADM on Cb and Cr, clamped into (0,1] and quantized with `n` levels.
QuantizedChromaFeatures chroma_adm_features(const Yuv420Frame& ref, const Yuv420Frame& dist,
                                            int n, const AdmConfig& cfg = {});

}  // namespace vmafc
