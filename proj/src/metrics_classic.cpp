#include "vmafc/metrics_classic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <span>

#include "json.hpp"
#include "vmafc/errors.hpp"

namespace vmafc {
namespace {

void require_same(const PlaneBuffer& a, const PlaneBuffer& b) {
  if (!a.same_geometry(b)) {
    throw GeometryError("plane size mismatch: " + std::to_string(a.width()) + "x" +
                        std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                        std::to_string(b.height()));
  }
}

constexpr double kPeakSq = 255.0 * 255.0;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
// Coarsest-scale side below which MS-SSIM is refused.
constexpr int kMsSsimMinSide = 3;

}  // namespace

double mse_plane(const PlaneBuffer& ref, const PlaneBuffer& dist) {
  require_same(ref, dist);
  const auto a = ref.samples();
  const auto b = dist.samples();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(a.size());
}

double psnr_from_mse(double mse, double cap_db) {
  if (mse <= 0.0) return cap_db;
  return std::min(cap_db, 10.0 * std::log10(kPeakSq / mse));
}

double psnr_plane(const PlaneBuffer& ref, const PlaneBuffer& dist, double cap_db) {
  return psnr_from_mse(mse_plane(ref, dist), cap_db);
}

void ChannelWeights::validate() const {
  if (!(w_y >= 0.0 && w_cb >= 0.0 && w_cr >= 0.0)) {
    throw DomainError("channel weights must be non-negative");
  }
  if (std::abs(w_y + w_cb + w_cr - 1.0) > 1e-9) {
    throw DomainError("channel weights must sum to 1");
  }
}

ChannelWeights load_channel_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open weights file " + path.string());
  ChannelWeights w;
  try {
    const auto j = nlohmann::json::parse(in);
    w.w_y = j.at("w_y").get<double>();
    w.w_cb = j.at("w_cb").get<double>();
    w.w_cr = j.at("w_cr").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("weights file " + path.string() + ": " + e.what());
  }
  w.validate();
  return w;
}

PsnrReport psnr_family(const Yuv420Frame& ref, const Yuv420Frame& dist,
                       const ChannelWeights& weights, double cap_db) {
  if (!ref.same_geometry(dist)) {
    throw GeometryError("frame size mismatch: " + std::to_string(ref.width()) + "x" +
                        std::to_string(ref.height()) + " vs " + std::to_string(dist.width()) +
                        "x" + std::to_string(dist.height()));
  }
  weights.validate();
  const double mse_y = mse_plane(ref.y(), dist.y());
  const double mse_cb = mse_plane(ref.cb(), dist.cb());
  const double mse_cr = mse_plane(ref.cr(), dist.cr());
  PsnrReport r;
  r.psnr_y = psnr_from_mse(mse_y, cap_db);
  r.psnr_cb = psnr_from_mse(mse_cb, cap_db);
  r.psnr_cr = psnr_from_mse(mse_cr, cap_db);
  r.psnr_411 = psnr_k11(r.psnr_y, r.psnr_cb, r.psnr_cr, 4.0);
  r.psnr_611 = psnr_k11(r.psnr_y, r.psnr_cb, r.psnr_cr, 6.0);
  r.cspsnr = psnr_from_mse(weights.w_y * mse_y + weights.w_cb * mse_cb + weights.w_cr * mse_cr,
                           cap_db);
  return r;
}

namespace {

struct SsimMaps {
  Image luminance;  // l term
  Image contrast;   // c*s term
};

SsimMaps ssim_maps(const Image& a, const Image& b, std::span<const double> taps) {
  const Image mu1 = filter_separable_valid(a, taps);
  const Image mu2 = filter_separable_valid(b, taps);
  const Image e11 = filter_separable_valid(multiply(a, a), taps);
  const Image e22 = filter_separable_valid(multiply(b, b), taps);
  const Image e12 = filter_separable_valid(multiply(a, b), taps);
  SsimMaps m{Image(mu1.width, mu1.height), Image(mu1.width, mu1.height)};
  for (std::size_t i = 0; i < mu1.data.size(); ++i) {
    const double m1 = mu1.data[i];
    const double m2 = mu2.data[i];
    const double s11 = e11.data[i] - m1 * m1;
    const double s22 = e22.data[i] - m2 * m2;
    const double s12 = e12.data[i] - m1 * m2;
    m.luminance.data[i] = (2.0 * m1 * m2 + kC1) / (m1 * m1 + m2 * m2 + kC1);
    m.contrast.data[i] = (2.0 * s12 + kC2) / (s11 + s22 + kC2);
  }
  return m;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

Image average_downsample(const Image& src) {
  Image dst(src.width / 2, src.height / 2);
  for (int y = 0; y < dst.height; ++y) {
    const double* r0 = src.row(2 * y);
    const double* r1 = src.row(2 * y + 1);
    double* out = dst.row(y);
    for (int x = 0; x < dst.width; ++x) {
      out[x] = 0.25 * (r0[2 * x] + r0[2 * x + 1] + r1[2 * x] + r1[2 * x + 1]);
    }
  }
  return dst;
}

}  // namespace

double ssim_image(const Image& ref, const Image& dist) {
  if (ref.width != dist.width || ref.height != dist.height) {
    throw GeometryError("ssim: image size mismatch");
  }
  if (ref.width < kSsimWindow || ref.height < kSsimWindow) {
    throw GeometryError("ssim: planes must be at least 11x11");
  }
  static const auto taps = gaussian_kernel(kSsimWindow, kSsimSigma);
  const SsimMaps m = ssim_maps(ref, dist, taps);
  double sum = 0.0;
  for (std::size_t i = 0; i < m.luminance.data.size(); ++i) {
    sum += m.luminance.data[i] * m.contrast.data[i];
  }
  return sum / static_cast<double>(m.luminance.data.size());
}

double ssim_plane(const PlaneBuffer& ref, const PlaneBuffer& dist) {
  require_same(ref, dist);
  return ssim_image(to_image(ref), to_image(dist));
}

double ms_ssim_plane(const PlaneBuffer& ref, const PlaneBuffer& dist) {
  require_same(ref, dist);
  constexpr int kMinSide = kMsSsimMinSide << (kMsSsimScales - 1);
  if (ref.width() < kMinSide || ref.height() < kMinSide) {
    throw GeometryError("ms-ssim: planes must be at least 48x48");
  }
  Image a = to_image(ref);
  Image b = to_image(dist);
  double product = 1.0;
  for (int s = 0; s < kMsSsimScales; ++s) {
    // Scales narrower than the window use the largest odd window that fits,
    // with sigma scaled in proportion.
    int len = std::min({kSsimWindow, a.width, a.height});
    if (len % 2 == 0) --len;
    const auto taps = gaussian_kernel(len, kSsimSigma * len / kSsimWindow);
    const SsimMaps m = ssim_maps(a, b, taps);
    if (s + 1 < kMsSsimScales) {
      // Negative structure correlation carries no information under a
      // fractional exponent; clamp at zero.
      const double cs = std::max(0.0, mean(m.contrast.data));
      product *= std::pow(cs, kMsSsimWeights[s]);
      a = average_downsample(a);
      b = average_downsample(b);
    } else {
      double sum = 0.0;
      for (std::size_t i = 0; i < m.luminance.data.size(); ++i) {
        sum += m.luminance.data[i] * m.contrast.data[i];
      }
      const double last = std::max(0.0, sum / static_cast<double>(m.luminance.data.size()));
      product *= std::pow(last, kMsSsimWeights[s]);
    }
  }
  return product;
}

}  // namespace vmafc
