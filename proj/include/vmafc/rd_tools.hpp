#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace vmafc {

struct QpParams {
  int qp_y = 0;
  int cb_offset = 0;
  int cr_offset = 0;
  /// Standard behaviour: offsets clipped to [-12, 12].
  bool clipped_mode = true;
};

/// Intermediate chroma QP to final chroma QP, clamped to [0, 51].
int chroma_qp_map(int qp_i);

/// (qp_cb, qp_cr)
std::pair<int, int> chroma_qp(const QpParams& p);

struct RdPoint {
  double bitrate_kbps = 0.0;
  double quality = 0.0;
};

struct RdCurve {
  std::vector<RdPoint> points;
  void validate() const;
};

/// bitrate_kbps, quality
RdCurve read_rd_csv(std::istream& in);
RdCurve read_rd_csv(const std::filesystem::path& path);

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  /// Exact integral over [a, b] within the knot range.
  double integrate(double a, double b) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::size_t segment(double x) const;
  std::vector<double> x_, y_, d_;
};

/// Average bitrate difference of `test` relative to `anchor` at equal quality,
/// in percent.
double bd_rate(const RdCurve& anchor, const RdCurve& test);

struct Violation {
  enum class Axis { kChromaStep, kCrf } axis;
  std::size_t crf_index = 0;
  std::size_t step_index = 0;  // cell that increased relative to its predecessor
  double magnitude = 0.0;
};

struct MonotonicityReport {
  std::vector<std::vector<double>> grid;
  std::vector<Violation> violations;
};

inline constexpr double kMonotonicityTolerance = 1e-6;

/// grid[crf][step]; quality must not increase along either axis.
MonotonicityReport monotonicity_check(const std::vector<std::vector<double>>& grid,
                                      double tolerance = kMonotonicityTolerance);

}  // namespace vmafc
