#include "vmafc/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "vmafc/errors.hpp"
#include "vmafc/parallel.hpp"

namespace vmafc {
namespace {

// Population mean and standard deviation accumulated in one pass.
struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stddev() const {
    if (n == 0) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(sum_sq / static_cast<double>(n) - m * m, 0.0));
  }
};

}  // namespace

std::vector<double> motion_ti(const VideoSequence& seq) {
  if (seq.empty()) throw InputError("motion_ti: empty sequence");
  std::vector<double> out(seq.size(), 0.0);
  for (std::size_t t = 1; t < seq.size(); ++t) {
    const auto prev = seq[t - 1].y().samples();
    const auto cur = seq[t].y().samples();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      acc += static_cast<std::uint64_t>(std::abs(int{cur[i]} - int{prev[i]}));
    }
    out[t] = static_cast<double>(acc) / static_cast<double>(cur.size());
  }
  return out;
}

double spatial_information(const PlaneBuffer& luma) {
  const int w = luma.width();
  const int h = luma.height();
  if (w < 3 || h < 3) return 0.0;
  Moments m;
  for (int y = 1; y < h - 1; ++y) {
    const auto up = luma.row(y - 1);
    const auto mid = luma.row(y);
    const auto dn = luma.row(y + 1);
    for (int x = 1; x < w - 1; ++x) {
      const int gx = (up[x + 1] + 2 * mid[x + 1] + dn[x + 1]) - (up[x - 1] + 2 * mid[x - 1] + dn[x - 1]);
      const int gy = (dn[x - 1] + 2 * dn[x] + dn[x + 1]) - (up[x - 1] + 2 * up[x] + up[x + 1]);
      m.add(std::sqrt(static_cast<double>(gx * gx + gy * gy)));
    }
  }
  return m.stddev();
}

double temporal_information(const PlaneBuffer& prev, const PlaneBuffer& cur) {
  if (!prev.same_geometry(cur)) throw GeometryError("temporal_information: size mismatch");
  const auto a = prev.samples();
  const auto b = cur.samples();
  // Integer sums keep the result exact under a constant luma offset.
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = int{b[i]} - int{a[i]};
    sum += d;
    sum_sq += d * d;
  }
  const double n = static_cast<double>(a.size());
  const double mean = static_cast<double>(sum) / n;
  return std::sqrt(std::max(static_cast<double>(sum_sq) / n - mean * mean, 0.0));
}

double colorfulness(const RgbFrame& frame) {
  const auto r = frame.r.samples();
  const auto g = frame.g.samples();
  const auto b = frame.b.samples();
  if (r.size() != g.size() || r.size() != b.size()) {
    throw GeometryError("colorfulness: plane size mismatch");
  }
  Moments rg;
  Moments yb;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double rv = r[i];
    const double gv = g[i];
    const double bv = b[i];
    rg.add(rv - gv);
    yb.add(0.5 * (rv + gv) - bv);
  }
  const double sd = std::hypot(rg.stddev(), yb.stddev());
  const double mu = std::hypot(rg.mean(), yb.mean());
  return sd + 0.3 * mu;
}

ContentDescriptors si_ti_cf(const VideoSequence& seq) {
  if (seq.empty()) throw InputError("si_ti_cf: empty sequence");
  const std::size_t n = seq.size();
  std::vector<double> si(n), ti(n, 0.0), cf(n);
  parallel_for(n, 1, [&](std::size_t t) {
    si[t] = spatial_information(seq[t].y());
    if (t > 0) ti[t] = temporal_information(seq[t - 1].y(), seq[t].y());
    cf[t] = colorfulness(yuv420_to_rgb444(seq[t]));
  });
  ContentDescriptors out;
  out.si = *std::max_element(si.begin(), si.end());
  out.ti = *std::max_element(ti.begin(), ti.end());
  out.cf = *std::max_element(cf.begin(), cf.end());
  return out;
}

}  // namespace vmafc
