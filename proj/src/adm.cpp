#include "vmafc/adm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vmafc/errors.hpp"

namespace vmafc {
namespace {

constexpr int kMinSide = 32;

// Daubechies-2 analysis pair; hi[k] = (-1)^k lo[3-k].
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kNorm = 4.0 * 1.4142135623730951;
constexpr double kLo[4] = {(1.0 + kSqrt3) / kNorm, (3.0 + kSqrt3) / kNorm,
                           (3.0 - kSqrt3) / kNorm, (1.0 - kSqrt3) / kNorm};
constexpr double kHi[4] = {kLo[3], -kLo[2], kLo[1], -kLo[0]};

// Visibility model of the wavelet basis (luma parameters) and the basis
// function amplitudes per level (rows) and orientation (LL, h/v, d, h/v).
constexpr double kModelA = 0.495;
constexpr double kModelK = 0.466;
constexpr double kModelF0 = 0.401;
constexpr double kModelG[4] = {1.501, 1.0, 0.534, 1.0};
constexpr double kBasisAmplitude[6][4] = {
    {0.62171, 0.67234, 0.72709, 0.67234},     {0.34537, 0.41317, 0.49428, 0.41317},
    {0.18004, 0.22727, 0.28688, 0.22727},     {0.091401, 0.11792, 0.15214, 0.11792},
    {0.045943, 0.059758, 0.077727, 0.059758}, {0.023013, 0.030018, 0.039156, 0.030018}};

// Ratio denominators are kept away from zero for empty subbands.
constexpr double kRatioEpsilon = 1e-30;

}  // namespace

double csf_weight(int level, Orientation orientation, double view_distance,
                  double display_height) {
  if (level < 0 || level >= 6) throw DomainError("csf_weight: level out of range");
  const int theta = orientation == Orientation::kDiagonal ? 2 : 1;
  const double resolution = view_distance * display_height * std::numbers::pi / 180.0;
  const double t =
      std::log10(std::pow(2.0, level + 1) * kModelF0 * kModelG[theta] / resolution);
  const double q = 2.0 * kModelA * std::pow(10.0, kModelK * t * t) /
                   kBasisAmplitude[level][theta];
  return 1.0 / q;
}

CsfTable default_csf_table(double view_distance, double display_height) {
  CsfTable table{};
  for (int l = 0; l < kAdmLevels; ++l) {
    for (int o = 0; o < 3; ++o) {
      table[l][o] = csf_weight(l, static_cast<Orientation>(o), view_distance, display_height);
    }
  }
  return table;
}

void AdmConfig::validate() const {
  if (!(angle_threshold_deg >= 0.0 && angle_threshold_deg < 90.0)) {
    throw DomainError("adm: angle threshold must be in [0, 90) degrees");
  }
  if (masking_size < 1 || masking_size % 2 == 0) {
    throw DomainError("adm: masking neighbourhood must be odd");
  }
  if (!(minkowski_p >= 1.0)) throw DomainError("adm: Minkowski exponent must be >= 1");
  if (!(border_fraction >= 0.0 && border_fraction < 0.5)) {
    throw DomainError("adm: border fraction must be in [0, 0.5)");
  }
  for (const auto& level : csf) {
    for (double w : level) {
      if (!(w > 0.0)) throw DomainError("adm: csf weights must be positive");
    }
  }
}

DwtBands dwt2_db2(const Image& src) {
  const int w = src.width;
  const int h = src.height;
  const int hw = (w + 1) / 2;
  const int hh = (h + 1) / 2;

  Image lo_v(w, hh);
  Image hi_v(w, hh);
  for (int i = 0; i < hh; ++i) {
    const double* rows[4];
    for (int k = 0; k < 4; ++k) rows[k] = src.row(reflect_index(2 * i - 1 + k, h));
    double* lo = lo_v.row(i);
    double* hi = hi_v.row(i);
    for (int x = 0; x < w; ++x) {
      lo[x] = kLo[0] * rows[0][x] + kLo[1] * rows[1][x] + kLo[2] * rows[2][x] +
              kLo[3] * rows[3][x];
      hi[x] = kHi[0] * rows[0][x] + kHi[1] * rows[1][x] + kHi[2] * rows[2][x] +
              kHi[3] * rows[3][x];
    }
  }

  std::vector<int> cols(static_cast<std::size_t>(hw) * 4);
  for (int j = 0; j < hw; ++j) {
    for (int k = 0; k < 4; ++k) cols[j * 4 + k] = reflect_index(2 * j - 1 + k, w);
  }
  auto horizontal = [&](const Image& in, Image& lo_out, Image& hi_out) {
    for (int y = 0; y < hh; ++y) {
      const double* r = in.row(y);
      double* lo = lo_out.row(y);
      double* hi = hi_out.row(y);
      for (int j = 0; j < hw; ++j) {
        const int* c = &cols[j * 4];
        lo[j] = kLo[0] * r[c[0]] + kLo[1] * r[c[1]] + kLo[2] * r[c[2]] + kLo[3] * r[c[3]];
        hi[j] = kHi[0] * r[c[0]] + kHi[1] * r[c[1]] + kHi[2] * r[c[2]] + kHi[3] * r[c[3]];
      }
    }
  };

  DwtBands out{Image(hw, hh), Image(hw, hh), Image(hw, hh), Image(hw, hh)};
  horizontal(lo_v, out.ll, out.v);
  horizontal(hi_v, out.h, out.d);
  return out;
}

namespace {

struct LevelSums {
  double num = 0.0;
  double den = 0.0;
};

// Decouples one level into restored and additive parts, applies CSF weights and
// contrast masking, and Minkowski-pools the centre region.
LevelSums adm_level(const DwtBands& ref, const DwtBands& dist, int level, const AdmConfig& cfg) {
  const int w = ref.h.width;
  const int h = ref.h.height;
  const std::size_t n = ref.h.data.size();
  const auto& weights = cfg.csf[level];
  const double cos_sq = std::pow(std::cos(cfg.angle_threshold_deg * std::numbers::pi / 180.0), 2);

  const Image* ref_bands[3] = {&ref.h, &ref.v, &ref.d};
  const Image* dist_bands[3] = {&dist.h, &dist.v, &dist.d};
  std::array<Image, 3> restored{Image(w, h), Image(w, h), Image(w, h)};
  std::array<Image, 3> additive{Image(w, h), Image(w, h), Image(w, h)};

  for (std::size_t i = 0; i < n; ++i) {
    const double oh = ref.h.data[i];
    const double ov = ref.v.data[i];
    const double th = dist.h.data[i];
    const double tv = dist.v.data[i];
    const double dot = oh * th + ov * tv;
    const double o_mag = oh * oh + ov * ov;
    const double t_mag = th * th + tv * tv;
    const bool aligned = dot >= 0.0 && dot * dot >= cos_sq * o_mag * t_mag;
    for (int b = 0; b < 3; ++b) {
      const double o = ref_bands[b]->data[i];
      const double t = dist_bands[b]->data[i];
      double rst;
      if (aligned) {
        rst = t;
      } else {
        const double k = std::clamp(t / (o + kRatioEpsilon), 0.0, 1.0);
        rst = k * o;
      }
      restored[b].data[i] = rst * weights[b];
      additive[b].data[i] = std::abs(t - rst) * weights[b];
    }
  }

  // Masking threshold: weighted neighbourhood sum of the additive energy over
  // all three orientations, the centre sample counted twice.
  const int half = cfg.masking_size / 2;
  const double unit = 1.0 / (3.0 * (cfg.masking_size * cfg.masking_size + 1));
  Image threshold(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int b = 0; b < 3; ++b) {
        const Image& a = additive[b];
        for (int dy = -half; dy <= half; ++dy) {
          const double* r = a.row(reflect_index(y + dy, h));
          for (int dx = -half; dx <= half; ++dx) acc += r[reflect_index(x + dx, w)];
        }
        acc += a.at(x, y);
      }
      threshold.at(x, y) = acc * unit;
    }
  }

  const int border = static_cast<int>(std::floor(cfg.border_fraction * std::min(w, h)));
  const int x0 = border;
  const int x1 = w - border;
  const int y0 = border;
  const int y1 = h - border;
  const double p = cfg.minkowski_p;
  const double area = static_cast<double>(x1 - x0) * static_cast<double>(y1 - y0);
  const double floor_term = std::pow(area / 32.0, 1.0 / p);

  LevelSums sums;
  for (int b = 0; b < 3; ++b) {
    double num = 0.0;
    double den = 0.0;
    for (int y = y0; y < y1; ++y) {
      const double* rst = restored[b].row(y);
      const double* thr = threshold.row(y);
      const double* o = ref_bands[b]->row(y);
      for (int x = x0; x < x1; ++x) {
        const double masked = std::max(std::abs(rst[x]) - thr[x], 0.0);
        const double reference = std::abs(o[x] * weights[b]);
        if (p == 3.0) {
          num += masked * masked * masked;
          den += reference * reference * reference;
        } else {
          num += std::pow(masked, p);
          den += std::pow(reference, p);
        }
      }
    }
    sums.num += std::pow(num, 1.0 / p) + floor_term;
    sums.den += std::pow(den, 1.0 / p) + floor_term;
  }
  return sums;
}

}  // namespace

AdmScores adm_multiscale(const Image& ref, const Image& dist, const AdmConfig& cfg) {
  cfg.validate();
  if (ref.width != dist.width || ref.height != dist.height) {
    throw GeometryError("adm: plane size mismatch");
  }
  if (ref.width < kMinSide || ref.height < kMinSide) {
    throw GeometryError("adm: planes must be at least 32x32 for four levels");
  }
  AdmScores out;
  double num_total = 0.0;
  double den_total = 0.0;
  Image r = ref;
  Image d = dist;
  for (int level = 0; level < kAdmLevels; ++level) {
    DwtBands rb = dwt2_db2(r);
    DwtBands db = dwt2_db2(d);
    const LevelSums sums = adm_level(rb, db, level, cfg);
    out.scale[level] = sums.num / sums.den;
    num_total += sums.num;
    den_total += sums.den;
    r = std::move(rb.ll);
    d = std::move(db.ll);
  }
  out.overall = num_total / den_total;
  return out;
}

AdmScores adm_multiscale(const PlaneBuffer& ref, const PlaneBuffer& dist, const AdmConfig& cfg) {
  if (!ref.same_geometry(dist)) throw GeometryError("adm: plane size mismatch");
  return adm_multiscale(to_image(ref), to_image(dist), cfg);
}

double quantize_feature(double x, int n) {
  if (n < 1) throw DomainError("quantize_feature: n must be >= 1");
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("quantize_feature: x must be in (0, 1]");
  return std::ceil(x * n) / n;
}

QuantizedChromaFeatures chroma_adm_features(const Yuv420Frame& ref, const Yuv420Frame& dist,
                                            int n, const AdmConfig& cfg) {
  if (n < 1) throw DomainError("chroma_adm_features: n must be >= 1");
  if (!ref.same_geometry(dist)) throw GeometryError("chroma_adm_features: frame size mismatch");
  auto to_unit = [](double v) {
    return std::clamp(v, std::numeric_limits<double>::min(), 1.0);
  };
  QuantizedChromaFeatures out;
  out.n_levels = n;
  out.adm_cb_s3 = adm_multiscale(ref.cb(), dist.cb(), cfg).scale[3];
  out.adm_cr_s3 = adm_multiscale(ref.cr(), dist.cr(), cfg).scale[3];
  out.adm_cb_s3_q = quantize_feature(to_unit(out.adm_cb_s3), n);
  out.adm_cr_s3_q = quantize_feature(to_unit(out.adm_cr_s3), n);
  return out;
}

}  // namespace vmafc
