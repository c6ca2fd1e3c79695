#include "vmafc/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "vmafc/errors.hpp"

namespace vmafc {
namespace {

constexpr double kFisherClamp = 0.999999;
constexpr int kMaxIterations = 1000;

void require_pair(std::span<const double> x, std::span<const double> y, std::size_t min_n,
                  const char* what) {
  if (x.size() != y.size()) throw DomainError(std::string(what) + ": length mismatch");
  if (x.size() < min_n) {
    throw DomainError(std::string(what) + ": need at least " + std::to_string(min_n) + " points");
  }
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sse_of(const std::array<double, 4>& b, std::span<const double> x, std::span<const double> y) {
  const LogisticFit f{b[0], b[1], b[2], b[3]};
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f(x[i]);
    s += r * r;
  }
  return s;
}

// Solves the 4x4 system by Gaussian elimination with partial pivoting.
bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b,
            std::array<double, 4>& out) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (!(std::abs(a[piv][col]) > 0.0)) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = 3; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 4; ++c) s -= a[r][c] * out[c];
    out[r] = s / a[r][r];
  }
  return std::all_of(out.begin(), out.end(), [](double v) { return std::isfinite(v); });
}

// Damped Gauss-Newton with Marquardt diagonal scaling.
LogisticFit fit_from(std::array<double, 4> b, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double y_mean = mean_of(y);
  double total = 0.0;
  for (double v : y) total += (v - y_mean) * (v - y_mean);

  double sse = sse_of(b, x, y);
  double lambda = 1e-3;
  LogisticFit fit{b[0], b[1], b[2], b[3]};
  fit.converged = false;
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    // A perfect linear relation is only reached as the width grows without
    // bound; stop once the residual is negligible against the data spread.
    if (sse <= 1e-10 * total) {
      fit.converged = true;
      break;
    }
    std::array<std::array<double, 4>, 4> jtj{};
    std::array<double, 4> jtr{};
    const double s = std::abs(b[3]);
    const double sgn = b[3] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (x[i] - b[2]) / s;
      const double l = 1.0 / (1.0 + std::exp(-u));
      const double slope = (b[0] - b[1]) * l * (1.0 - l);
      const std::array<double, 4> j = {l, 1.0 - l, -slope / s, -slope * u / s * sgn};
      const double r = y[i] - (b[1] + (b[0] - b[1]) * l);
      for (int p = 0; p < 4; ++p) {
        jtr[p] += j[p] * r;
        for (int q = 0; q < 4; ++q) jtj[p][q] += j[p] * j[q];
      }
    }

    bool accepted = false;
    while (lambda < 1e16) {
      auto a = jtj;
      for (int p = 0; p < 4; ++p) a[p][p] += lambda * std::max(jtj[p][p], 1e-12);
      std::array<double, 4> step{};
      if (solve4(a, jtr, step)) {
        std::array<double, 4> trial;
        for (int p = 0; p < 4; ++p) trial[p] = b[p] + step[p];
        const double trial_sse = trial[3] != 0.0 ? sse_of(trial, x, y) : sse;
        if (std::isfinite(trial_sse) && trial_sse < sse) {
          const double gain = sse - trial_sse;
          b = trial;
          sse = trial_sse;
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          if (gain <= 1e-12 * sse) fit.converged = true;
          break;
        }
      }
      lambda *= 10.0;
    }
    // No descent direction left: the current point is stationary.
    if (!accepted) fit.converged = true;
    if (fit.converged) break;
  }
  fit.beta1 = b[0];
  fit.beta2 = b[1];
  fit.beta3 = b[2];
  fit.beta4 = b[3];
  fit.iterations = it;
  return fit;
}

}  // namespace

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y, 2, "pearson");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DomainError("pearson: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double srocc(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y, 4, "srocc");
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

double LogisticFit::operator()(double x) const {
  return beta2 + (beta1 - beta2) / (1.0 + std::exp(-(x - beta3) / std::abs(beta4)));
}

PlccResult plcc_logistic(std::span<const double> pred, std::span<const double> mos) {
  require_pair(pred, mos, 5, "plcc");
  const double raw = pearson(pred, mos);  // rejects constant inputs

  const std::size_t n = pred.size();
  std::vector<double> sorted(pred.begin(), pred.end());
  std::sort(sorted.begin(), sorted.end());
  const double median =
      n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const double pm = mean_of(pred);
  double var = 0.0;
  for (double v : pred) var += (v - pm) * (v - pm);
  const double sd = std::sqrt(var / static_cast<double>(n - 1));

  std::vector<std::array<double, 4>> starts;
  starts.push_back({*std::max_element(mos.begin(), mos.end()),
                    *std::min_element(mos.begin(), mos.end()), median, sd});
  // Second start deep in the linear regime, matched to the least-squares line.
  {
    const double mm = mean_of(mos);
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxy += (pred[i] - pm) * (mos[i] - mm);
    const double slope = sxy / var;
    const double width = 4.0 * (sorted.back() - sorted.front());
    const double half = 2.0 * slope * width;
    starts.push_back({mm + half, mm - half, pm, width});
  }

  // The least-squares line is the wide-window limit of the family. Carry it as
  // a candidate, parameterised with a window far beyond the data range.
  std::vector<LogisticFit> candidates;
  {
    const double mm = mean_of(mos);
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxy += (pred[i] - pm) * (mos[i] - mm);
    const double slope = sxy / var;
    const double width = 1e6 * (sorted.back() - sorted.front());
    const double half = 2.0 * slope * width;
    LogisticFit line{mm + half, mm - half, pm, width};
    candidates.push_back(line);
  }
  for (const auto& s : starts) candidates.push_back(fit_from(s, pred, mos));

  PlccResult best;
  double best_sse = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& f : candidates) {
    if (!f.converged) continue;
    const double e = sse_of({f.beta1, f.beta2, f.beta3, f.beta4}, pred, mos);
    if (e < best_sse) {
      best_sse = e;
      best.fit = f;
      any = true;
    }
  }

  std::vector<double> mapped(n), resid(n);
  if (any) {
    for (std::size_t i = 0; i < n; ++i) {
      mapped[i] = best.fit(pred[i]);
      resid[i] = mos[i] - mapped[i];
    }
    try {
      best.plcc = pearson(mapped, mos);
    } catch (const DomainError&) {
      any = false;
    }
  }
  if (!any) {
    best.fallback = true;
    best.fit.converged = false;
    best.plcc = raw;
    return best;
  }
  const double rm = mean_of(resid);
  double rv = 0.0;
  for (double r : resid) rv += (r - rm) * (r - rm);
  best.fit.residual_sigma = std::sqrt(rv / static_cast<double>(n - 1));
  return best;
}

double fisher_z(double r) {
  if (!(std::abs(r) < 1.0)) throw DomainError("fisher_z: |r| must be < 1");
  return std::atanh(r);
}

FisherResult fisher_overall(std::span<const double> r, std::optional<std::span<const double>> weights) {
  if (r.empty()) throw DomainError("fisher_overall: no correlations");
  if (weights && weights->size() != r.size()) {
    throw DomainError("fisher_overall: weight count mismatch");
  }
  FisherResult out;
  double sum = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(std::abs(r[i]) <= 1.0)) throw DomainError("fisher_overall: correlation outside [-1,1]");
    double v = r[i];
    if (std::abs(v) >= kFisherClamp) {
      if (std::abs(v) > kFisherClamp) out.clamped = true;
      v = std::copysign(kFisherClamp, v);
    }
    const double w = weights ? (*weights)[i] : 1.0;
    if (!(w >= 0.0)) throw DomainError("fisher_overall: negative weight");
    sum += w * std::atanh(v);
    wsum += w;
  }
  if (!(wsum > 0.0)) throw DomainError("fisher_overall: weights sum to zero");
  // Equal inputs are a fixed point; return them without the round trip.
  if (!out.clamped && std::all_of(r.begin(), r.end(), [&](double v) { return v == r[0]; }) &&
      std::abs(r[0]) < kFisherClamp) {
    out.r = r[0];
    return out;
  }
  out.r = std::tanh(sum / wsum);
  return out;
}

std::vector<std::vector<Significance>> significance_matrix(
    std::span<const CorrelationSample> samples, double critical) {
  std::vector<double> z(samples.size()), var(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].n <= 3) throw DomainError("significance: each sample needs n > 3");
    z[i] = std::atanh(std::clamp(samples[i].r, -kFisherClamp, kFisherClamp));
    var[i] = 1.0 / static_cast<double>(samples[i].n - 3);
  }
  std::vector<std::vector<Significance>> m(
      samples.size(), std::vector<Significance>(samples.size(), Significance::kIndistinguishable));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double stat = (z[i] - z[j]) / std::sqrt(var[i] + var[j]);
      if (stat > critical) {
        m[i][j] = Significance::kBetter;
        m[j][i] = Significance::kWorse;
      } else if (stat < -critical) {
        m[i][j] = Significance::kWorse;
        m[j][i] = Significance::kBetter;
      }
    }
  }
  return m;
}

std::string significance_symbol(Significance s) {
  switch (s) {
    case Significance::kBetter: return "1";
    case Significance::kWorse: return "0";
    case Significance::kIndistinguishable: return "-";
  }
  return "-";
}

}  // namespace vmafc
