#pragma once

#include <span>
#include <vector>

namespace vmafc {

struct SvrConfig {
  double c = 8.0;        // 2^3
  double gamma = 0.125;  // 2^-3
  double nu = 0.5;
  double tolerance = 1e-10;

  void validate() const;
};

struct NuSvrSolution {
  std::vector<std::size_t> support_indices;
  std::vector<double> coefficients;
  double bias = 0.0;
  long iterations = 0;
  bool converged = true;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

/// Solves the nu-SVR dual with an RBF kernel by two-coordinate updates, the
/// working pair chosen from the maximal KKT violator within each sign class.
/// Rows must already be normalized. Deterministic for a fixed row order.
NuSvrSolution solve_nu_svr(const std::vector<std::vector<double>>& rows,
                           std::span<const double> targets, const SvrConfig& cfg);

}  // namespace vmafc
