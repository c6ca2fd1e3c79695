#pragma once

#include <filesystem>

#include "vmafc/image.hpp"
#include "vmafc/plane.hpp"
#include "vmafc/video_io.hpp"

namespace vmafc {

inline constexpr double kDefaultPsnrCapDb = 60.0;

double mse_plane(const PlaneBuffer& ref, const PlaneBuffer& dist);

/// 10*log10(255^2 / mse), with zero error (or anything above the cap) reported
/// as `cap_db`.
double psnr_from_mse(double mse, double cap_db = kDefaultPsnrCapDb);
double psnr_plane(const PlaneBuffer& ref, const PlaneBuffer& dist,
                  double cap_db = kDefaultPsnrCapDb);

/// (k*Y + Cb + Cr) / (k + 2)
constexpr double psnr_k11(double psnr_y, double psnr_cb, double psnr_cr, double k) {
  return (k * psnr_y + psnr_cb + psnr_cr) / (k + 2.0);
}

/// Per-channel MSE weights for CSPSNR. No default is shipped; the values come
/// from configuration.
struct ChannelWeights {
  double w_y = 0.0;
  double w_cb = 0.0;
  double w_cr = 0.0;

  /// Throws DomainError unless non-negative and summing to 1 within 1e-9.
  void validate() const;
};

/// Reads {"w_y": .., "w_cb": .., "w_cr": ..} from a JSON file.
ChannelWeights load_channel_weights(const std::filesystem::path& path);

struct PsnrReport {
  double psnr_y = 0.0;
  double psnr_cb = 0.0;
  double psnr_cr = 0.0;
  double psnr_411 = 0.0;
  double psnr_611 = 0.0;
  double cspsnr = 0.0;
};

PsnrReport psnr_family(const Yuv420Frame& ref, const Yuv420Frame& dist,
                       const ChannelWeights& weights, double cap_db = kDefaultPsnrCapDb);

/// Mean SSIM over the valid region of an 11x11 Gaussian (sigma 1.5) window.
double ssim_plane(const PlaneBuffer& ref, const PlaneBuffer& dist);
double ssim_image(const Image& ref, const Image& dist);

/// Five-scale MS-SSIM with the standard exponents. From 176 pixels up every
/// scale uses the 11x11 window; smaller planes (down to 48) shrink the window at
/// the scales it no longer fits.
double ms_ssim_plane(const PlaneBuffer& ref, const PlaneBuffer& dist);

inline constexpr int kMsSsimScales = 5;
inline constexpr double kMsSsimWeights[kMsSsimScales] = {0.0448, 0.2856, 0.3001, 0.2363,
                                                         0.1333};

}  // namespace vmafc
