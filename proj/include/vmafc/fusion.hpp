#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vmafc/adm.hpp"
#include "vmafc/svr.hpp"
#include "vmafc/video_io.hpp"
#include "vmafc/vif.hpp"

namespace vmafc {

inline constexpr std::size_t kFeatureCount = 8;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "vif_s0", "vif_s1", "vif_s2", "vif_s3", "ti", "adm", "adm_cb_s3_q", "adm_cr_s3_q"};

/// The fused per-frame feature vector, in canonical order.
struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  double get(std::string_view name) const;

  static std::vector<std::string> names();
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Everything measured on one frame pair; `fused` is what the model consumes.
struct FrameFeatures {
  FeatureVector fused;
  VifScores vif;
  AdmScores adm;
  QuantizedChromaFeatures chroma;
};

struct ExtractOptions {
  int n_quant = 8;
  int threads = 1;
  VifConfig vif;
  AdmConfig adm;
};

std::vector<FrameFeatures> extract_frame_features(const VideoSequence& ref,
                                                  const VideoSequence& dist,
                                                  const ExtractOptions& opts = {});

std::vector<FeatureVector> extract_feature_vector(const VideoSequence& ref,
                                                  const VideoSequence& dist, int n_quant,
                                                  int threads = 1);

/// Element-wise arithmetic mean.
FeatureVector pool_features(std::span<const FeatureVector> frames);

struct NormBound {
  double min = 0.0;
  double max = 0.0;
  bool constant() const { return !(max > min); }
};

/// Min-max rescale clamped to [0,1]; constant features map to 0.5.
double normalize_value(double x, const NormBound& bound);
std::vector<double> normalize(std::span<const double> raw, std::span<const NormBound> bounds);
FeatureVector normalize(const FeatureVector& raw, std::span<const NormBound> bounds);

struct TrainingRow {
  std::string content_id;
  std::vector<double> features;
  double target = 0.0;
};

struct TrainingSet {
  std::vector<std::string> feature_names;
  std::vector<TrainingRow> rows;

  void validate() const;
  /// Keeps only the named columns, in the given order.
  TrainingSet select(std::span<const std::string> names) const;
};

inline constexpr int kModelFormatVersion = 1;

struct SvrModel {
  int format_version = kModelFormatVersion;
  std::vector<std::string> feature_names;
  std::vector<NormBound> norm_bounds;
  SvrConfig config;
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> coefficients;
  double bias = 0.0;
  /// Set when every training target was equal; the model predicts `bias`.
  bool degenerate = false;
  std::map<std::string, std::string> metadata;
};

std::string fingerprint(const VifConfig& cfg);
std::string fingerprint(const AdmConfig& cfg);
/// Metadata describing how fused features were produced.
std::map<std::string, std::string> extractor_metadata(const ExtractOptions& opts);
/// Throws DomainError if `model` was trained on differently configured features.
void check_extractor_metadata(const SvrModel& model, const ExtractOptions& opts);

SvrModel train_svr(const TrainingSet& data, const SvrConfig& cfg,
                   std::map<std::string, std::string> metadata = {});

/// Score in [0,100]. Features are matched by name, never by position.
double predict(const SvrModel& model, std::span<const std::string> names,
               std::span<const double> raw);
double predict(const SvrModel& model, const FeatureVector& features);

struct GridCell {
  double c = 0.0;
  double gamma = 0.0;
  std::vector<double> srocc;
  double overall_srocc = 0.0;
  std::optional<bool> monotone;
  std::size_t violations = 0;
};

/// Pooled features laid out as [crf level][chroma step].
using MonotonicityFixture = std::vector<std::vector<FeatureVector>>;

struct GridOptions {
  std::vector<int> log2_c{-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5};
  std::vector<int> log2_gamma{-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5};
  double nu = 0.5;
  int threads = 1;
  std::optional<MonotonicityFixture> monotonicity;
};

/// Trains one model per (C, gamma) cell and reports per-set and Fisher-overall
/// SROCC. Rows come back in (C, gamma) order regardless of threading.
std::vector<GridCell> grid_search(const TrainingSet& data,
                                  std::span<const TrainingSet> validation,
                                  const GridOptions& opts = {});

}  // namespace vmafc
