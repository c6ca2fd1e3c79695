#include "vmafc/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vmafc/errors.hpp"

namespace vmafc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Stand-in curvature for non-positive-definite pairs.
constexpr double kTau = 1e-12;
// Rows beyond this count are recomputed on demand instead of cached.
constexpr std::size_t kMaxCachedRows = 4000;

class KernelRows {
 public:
  KernelRows(const std::vector<std::vector<double>>& rows, double gamma)
      : rows_(rows), gamma_(gamma), n_(rows.size()) {
    if (n_ <= kMaxCachedRows) {
      cache_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        cache_[i * n_ + i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
          const double k = rbf_kernel(rows_[i], rows_[j], gamma_);
          cache_[i * n_ + j] = k;
          cache_[j * n_ + i] = k;
        }
      }
    } else {
      scratch_a_.resize(n_);
      scratch_b_.resize(n_);
    }
  }

  // Kernel row for sample i; `slot` selects one of two scratch buffers when uncached.
  const double* row(std::size_t i, int slot) {
    if (!cache_.empty()) return &cache_[i * n_];
    auto& buf = slot == 0 ? scratch_a_ : scratch_b_;
    for (std::size_t j = 0; j < n_; ++j) buf[j] = rbf_kernel(rows_[i], rows_[j], gamma_);
    return buf.data();
  }

 private:
  const std::vector<std::vector<double>>& rows_;
  double gamma_;
  std::size_t n_;
  std::vector<double> cache_;
  std::vector<double> scratch_a_, scratch_b_;
};

}  // namespace

void SvrConfig::validate() const {
  if (!(c > 0.0)) throw DomainError("svr: C must be positive");
  if (!(gamma > 0.0)) throw DomainError("svr: gamma must be positive");
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("svr: nu must be in (0, 1]");
  if (!(tolerance > 0.0)) throw DomainError("svr: tolerance must be positive");
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

// Dual over 2l variables: alpha[0..l) carry sign +1 and alpha[l..2l) sign -1,
// with sum(alpha) = C*nu*l fixed and each sign class summing to C*nu*l/2.
NuSvrSolution solve_nu_svr(const std::vector<std::vector<double>>& rows,
                           std::span<const double> targets, const SvrConfig& cfg) {
  cfg.validate();
  const std::size_t l = rows.size();
  if (l == 0) throw InputError("svr: no training rows");
  if (targets.size() != l) throw InputError("svr: target count does not match rows");
  const std::size_t dim = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != dim) throw InputError("svr: ragged feature rows");
  }

  const std::size_t n = 2 * l;
  const double c = cfg.c;
  std::vector<double> alpha(n);
  std::vector<signed char> sign(n);
  std::vector<double> grad(n);
  {
    double budget = c * cfg.nu * static_cast<double>(l) / 2.0;
    for (std::size_t i = 0; i < l; ++i) {
      alpha[i] = alpha[i + l] = std::min(budget, c);
      budget -= alpha[i];
      sign[i] = 1;
      sign[i + l] = -1;
      grad[i] = -targets[i];
      grad[i + l] = targets[i];
    }
  }

  KernelRows kernel(rows, cfg.gamma);
  auto q_of = [&](std::size_t a, const double* krow, std::size_t b) {
    return static_cast<double>(sign[a] * sign[b]) * krow[b % l];
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0.0) continue;
    const double* krow = kernel.row(i % l, 0);
    for (std::size_t j = 0; j < n; ++j) grad[j] += alpha[i] * q_of(i, krow, j);
  }

  auto at_upper = [&](std::size_t t) { return alpha[t] >= c; };
  auto at_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  const long max_iter = std::max<long>(10000000, 100 * static_cast<long>(n));
  NuSvrSolution sol;
  sol.converged = false;
  long iter = 0;
  for (; iter < max_iter; ++iter) {
    // Maximal violators within each sign class.
    double gmax_p = -kInf, gmax_n = -kInf;
    long ip = -1, in = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (sign[t] > 0) {
        if (!at_upper(t) && -grad[t] >= gmax_p) {
          gmax_p = -grad[t];
          ip = static_cast<long>(t);
        }
      } else if (!at_lower(t) && grad[t] >= gmax_n) {
        gmax_n = grad[t];
        in = static_cast<long>(t);
      }
    }
    const double* krow_p = ip >= 0 ? kernel.row(static_cast<std::size_t>(ip) % l, 0) : nullptr;
    const double* krow_n = in >= 0 ? kernel.row(static_cast<std::size_t>(in) % l, 1) : nullptr;

    // Partner chosen by largest second-order decrease of the objective.
    double gmax_p2 = -kInf, gmax_n2 = -kInf;
    double best = kInf;
    long pick = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (sign[j] > 0) {
        if (at_lower(j)) continue;
        gmax_p2 = std::max(gmax_p2, grad[j]);
        const double diff = gmax_p + grad[j];
        if (diff > 0.0) {
          double quad = 2.0 - 2.0 * q_of(static_cast<std::size_t>(ip), krow_p, j);
          if (quad <= 0.0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best) {
            pick = static_cast<long>(j);
            best = obj;
          }
        }
      } else {
        if (at_upper(j)) continue;
        gmax_n2 = std::max(gmax_n2, -grad[j]);
        const double diff = gmax_n - grad[j];
        if (diff > 0.0) {
          double quad = 2.0 - 2.0 * q_of(static_cast<std::size_t>(in), krow_n, j);
          if (quad <= 0.0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best) {
            pick = static_cast<long>(j);
            best = obj;
          }
        }
      }
    }
    if (std::max(gmax_p + gmax_p2, gmax_n + gmax_n2) < cfg.tolerance || pick < 0) {
      sol.converged = true;
      break;
    }

    const auto j = static_cast<std::size_t>(pick);
    const auto i = static_cast<std::size_t>(sign[j] > 0 ? ip : in);
    const double* krow_i = sign[j] > 0 ? krow_p : krow_n;
    const double* krow_j = kernel.row(j % l, sign[j] > 0 ? 1 : 0);

    // Both variables share a sign, so their sum is preserved.
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    double quad = 2.0 - 2.0 * q_of(i, krow_i, j);
    if (quad <= 0.0) quad = kTau;
    const double delta = (grad[i] - grad[j]) / quad;
    const double sum = alpha[i] + alpha[j];
    alpha[i] -= delta;
    alpha[j] += delta;
    if (sum > c) {
      if (alpha[i] > c) {
        alpha[i] = c;
        alpha[j] = sum - c;
      }
    } else if (alpha[j] < 0.0) {
      alpha[j] = 0.0;
      alpha[i] = sum;
    }
    if (sum > c) {
      if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = sum - c;
      }
    } else if (alpha[i] < 0.0) {
      alpha[i] = 0.0;
      alpha[j] = sum;
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] += q_of(i, krow_i, k) * dai + q_of(j, krow_j, k) * daj;
    }
  }
  sol.iterations = iter;

  // Offset from free variables of each class, bracketed by bound variables otherwise.
  double ub[2] = {kInf, kInf};
  double lb[2] = {-kInf, -kInf};
  double free_sum[2] = {0.0, 0.0};
  long free_count[2] = {0, 0};
  for (std::size_t t = 0; t < n; ++t) {
    const int cls = sign[t] > 0 ? 0 : 1;
    const double g = grad[t];
    if (at_upper(t)) {
      lb[cls] = std::max(lb[cls], g);
    } else if (at_lower(t)) {
      ub[cls] = std::min(ub[cls], g);
    } else {
      ++free_count[cls];
      free_sum[cls] += g;
    }
  }
  double r[2];
  for (int cls = 0; cls < 2; ++cls) {
    r[cls] = free_count[cls] > 0 ? free_sum[cls] / static_cast<double>(free_count[cls])
                                 : (ub[cls] + lb[cls]) / 2.0;
  }
  const double rho = (r[0] - r[1]) / 2.0;
  sol.bias = -rho;

  for (std::size_t i = 0; i < l; ++i) {
    const double coef = alpha[i] - alpha[i + l];
    if (coef != 0.0) {
      sol.support_indices.push_back(i);
      sol.coefficients.push_back(coef);
    }
  }
  return sol;
}

}  // namespace vmafc
