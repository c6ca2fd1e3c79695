#include "vmafc/rd_tools.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "vmafc/csv.hpp"
#include "vmafc/errors.hpp"

namespace vmafc {
namespace {

constexpr int kMaxQp = 51;
constexpr int kOffsetClip = 12;
// Intermediate QP 30..43 to chroma QP.
constexpr int kChromaTable[14] = {29, 30, 31, 32, 33, 33, 34, 34, 35, 35, 36, 36, 37, 37};

int offset_qp(int qp_y, int offset, bool clipped) {
  if (clipped) offset = std::clamp(offset, -kOffsetClip, kOffsetClip);
  return qp_y + offset;
}

}  // namespace

int chroma_qp_map(int qp_i) {
  int qp_c;
  if (qp_i < 30) {
    qp_c = qp_i;
  } else if (qp_i <= 43) {
    qp_c = kChromaTable[qp_i - 30];
  } else {
    qp_c = qp_i - 6;
  }
  return std::clamp(qp_c, 0, kMaxQp);
}

std::pair<int, int> chroma_qp(const QpParams& p) {
  if (p.qp_y < 0 || p.qp_y > kMaxQp) throw DomainError("chroma_qp: qp_y must be in [0, 51]");
  return {chroma_qp_map(offset_qp(p.qp_y, p.cb_offset, p.clipped_mode)),
          chroma_qp_map(offset_qp(p.qp_y, p.cr_offset, p.clipped_mode))};
}

void RdCurve::validate() const {
  if (points.size() < 4) throw DomainError("rd curve: at least four points are required");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].bitrate_kbps > 0.0) || !std::isfinite(points[i].bitrate_kbps)) {
      throw DomainError("rd curve: bitrates must be positive");
    }
    if (!std::isfinite(points[i].quality)) throw DomainError("rd curve: non-finite quality");
    if (i > 0 && !(points[i].bitrate_kbps > points[i - 1].bitrate_kbps)) {
      throw DomainError("rd curve: bitrates must be strictly increasing");
    }
  }
}

RdCurve read_rd_csv(std::istream& in) {
  const csv::Table table = csv::read(in);
  const std::size_t c_rate = table.column("bitrate_kbps");
  const std::size_t c_quality = table.column("quality");
  RdCurve curve;
  for (const auto& row : table.rows) {
    if (row.size() <= std::max(c_rate, c_quality)) throw FormatError("rd csv: short row");
    curve.points.push_back({csv::to_double(row[c_rate]), csv::to_double(row[c_quality])});
  }
  return curve;
}

RdCurve read_rd_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open rd csv " + path.string());
  return read_rd_csv(in);
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("pchip: need at least two matching knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw DomainError("pchip: knots must be strictly increasing");
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] > 0.0) {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  // One-sided three-point end slopes, limited to preserve shape.
  auto end_slope = [](double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (std::signbit(d) != std::signbit(m0) || d == 0.0) {
      d = 0.0;
    } else if (std::signbit(m0) != std::signbit(m1) && std::abs(d) > 3.0 * std::abs(m0)) {
      d = 3.0 * m0;
    }
    return d;
  };
  d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t Pchip::segment(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0));
  return std::min(idx, x_.size() - 2);
}

double Pchip::operator()(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double t = x - x_[k];
  const double delta = (y_[k + 1] - y_[k]) / h;
  const double c2 = (3.0 * delta - 2.0 * d_[k] - d_[k + 1]) / h;
  const double c3 = (d_[k] + d_[k + 1] - 2.0 * delta) / (h * h);
  return y_[k] + t * (d_[k] + t * (c2 + t * c3));
}

double Pchip::integrate(double a, double b) const {
  if (a > b) return -integrate(b, a);
  if (a < x_min() || b > x_max()) throw DomainError("pchip: integration outside knot range");
  auto antiderivative = [&](std::size_t k, double t) {
    const double h = x_[k + 1] - x_[k];
    const double delta = (y_[k + 1] - y_[k]) / h;
    const double c2 = (3.0 * delta - 2.0 * d_[k] - d_[k + 1]) / h;
    const double c3 = (d_[k] + d_[k + 1] - 2.0 * delta) / (h * h);
    return t * (y_[k] + t * (d_[k] / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0)));
  };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
    const double lo = std::max(a, x_[k]);
    const double hi = std::min(b, x_[k + 1]);
    if (hi <= lo) continue;
    total += antiderivative(k, hi - x_[k]) - antiderivative(k, lo - x_[k]);
  }
  return total;
}

double bd_rate(const RdCurve& anchor, const RdCurve& test) {
  anchor.validate();
  test.validate();
  auto build = [](const RdCurve& c, const char* name) {
    std::vector<double> q, lr;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      if (i > 0 && !(c.points[i].quality > c.points[i - 1].quality)) {
        throw DomainError(std::string("bd_rate: quality of the ") + name +
                          " curve is not strictly increasing with bitrate");
      }
      q.push_back(c.points[i].quality);
      lr.push_back(std::log10(c.points[i].bitrate_kbps));
    }
    return Pchip(std::move(q), std::move(lr));
  };
  const Pchip a = build(anchor, "anchor");
  const Pchip t = build(test, "test");
  const double lo = std::max(a.x_min(), t.x_min());
  const double hi = std::min(a.x_max(), t.x_max());
  if (!(hi > lo)) throw DomainError("bd_rate: quality ranges do not overlap");
  const double diff = (t.integrate(lo, hi) - a.integrate(lo, hi)) / (hi - lo);
  return (std::pow(10.0, diff) - 1.0) * 100.0;
}

MonotonicityReport monotonicity_check(const std::vector<std::vector<double>>& grid,
                                      double tolerance) {
  if (grid.empty() || grid.front().empty()) throw DomainError("monotonicity: empty grid");
  const std::size_t steps = grid.front().size();
  for (const auto& row : grid) {
    if (row.size() != steps) throw DomainError("monotonicity: ragged grid");
  }
  MonotonicityReport report;
  report.grid = grid;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    for (std::size_t s = 0; s < steps; ++s) {
      if (s > 0) {
        const double rise = grid[c][s] - grid[c][s - 1];
        if (rise > tolerance) report.violations.push_back({Violation::Axis::kChromaStep, c, s, rise});
      }
      if (c > 0) {
        const double rise = grid[c][s] - grid[c - 1][s];
        if (rise > tolerance) report.violations.push_back({Violation::Axis::kCrf, c, s, rise});
      }
    }
  }
  return report;
}

}  // namespace vmafc
