#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vmafc {

/// Ranks starting at 1, ties get the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);
double srocc(std::span<const double> x, std::span<const double> y);

struct LogisticFit {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  double beta4 = 1.0;
  double residual_sigma = 0.0;
  int iterations = 0;
  bool converged = true;

  /// beta2 + (beta1 - beta2) / (1 + exp(-(x - beta3) / |beta4|))
  double operator()(double x) const;
};

struct PlccResult {
  double plcc = 0.0;
  LogisticFit fit;
  /// Set when the fit did not converge and `plcc` is the raw Pearson value.
  bool fallback = false;
};

PlccResult plcc_logistic(std::span<const double> pred, std::span<const double> mos);

struct FisherResult {
  double r = 0.0;
  /// At least one input had |r| = 1 and was pulled in to 0.999999.
  bool clamped = false;
};

double fisher_z(double r);
FisherResult fisher_overall(std::span<const double> r,
                            std::optional<std::span<const double>> weights = std::nullopt);

enum class Significance { kBetter, kWorse, kIndistinguishable };

struct CorrelationSample {
  double r = 0.0;
  std::size_t n = 0;
};

inline constexpr double kNormalCritical95 = 1.96;

/// cell[i][j] says whether model i's correlation is significantly above or
/// below model j's.
std::vector<std::vector<Significance>> significance_matrix(
    std::span<const CorrelationSample> samples, double critical = kNormalCritical95);

/// "1", "0" or "-".
std::string significance_symbol(Significance s);

struct DatasetEval {
  std::string dataset;
  std::size_t n = 0;
  double srocc = 0.0;
  double plcc = 0.0;
  bool plcc_fallback = false;
};

struct EvalReport {
  std::vector<DatasetEval> datasets;
  double overall_srocc = 0.0;
  double overall_plcc = 0.0;
};

}  // namespace vmafc
