#include "vmafc/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vmafc/csv.hpp"
#include "vmafc/descriptors.hpp"
#include "vmafc/errors.hpp"
#include "vmafc/eval.hpp"
#include "vmafc/parallel.hpp"
#include "vmafc/rd_tools.hpp"

namespace vmafc {

double FeatureVector::get(std::string_view name) const {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kFeatureNames[i] == name) return values[i];
  }
  throw DomainError("unknown feature name: " + std::string(name));
}

std::vector<std::string> FeatureVector::names() {
  return {kFeatureNames.begin(), kFeatureNames.end()};
}

std::vector<FrameFeatures> extract_frame_features(const VideoSequence& ref,
                                                  const VideoSequence& dist,
                                                  const ExtractOptions& opts) {
  if (ref.empty()) throw InputError("extract: empty sequence");
  if (ref.size() != dist.size()) throw GeometryError("extract: frame counts differ");
  if (ref.width() != dist.width() || ref.height() != dist.height()) {
    throw GeometryError("extract: frame sizes differ");
  }
  if (opts.n_quant < 1) throw DomainError("extract: n_quant must be >= 1");
  opts.vif.validate();
  opts.adm.validate();

  const std::vector<double> motion = motion_ti(dist);
  std::vector<FrameFeatures> out(ref.size());
  parallel_for(ref.size(), opts.threads, [&](std::size_t t) {
    FrameFeatures& f = out[t];
    f.vif = vif_multiscale(ref[t].y(), dist[t].y(), opts.vif);
    f.adm = adm_multiscale(ref[t].y(), dist[t].y(), opts.adm);
    f.chroma = chroma_adm_features(ref[t], dist[t], opts.n_quant, opts.adm);
    f.fused.values = {f.vif.s0(),         f.vif.s1(),         f.vif.s2(), f.vif.s3(),
                      motion[t],          f.adm.overall,      f.chroma.adm_cb_s3_q,
                      f.chroma.adm_cr_s3_q};
  });
  return out;
}

std::vector<FeatureVector> extract_feature_vector(const VideoSequence& ref,
                                                  const VideoSequence& dist, int n_quant,
                                                  int threads) {
  ExtractOptions opts;
  opts.n_quant = n_quant;
  opts.threads = threads;
  const auto frames = extract_frame_features(ref, dist, opts);
  std::vector<FeatureVector> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(f.fused);
  return out;
}

FeatureVector pool_features(std::span<const FeatureVector> frames) {
  if (frames.empty()) throw InputError("pool_features: no frames");
  FeatureVector out;
  std::vector<double> column(frames.size());
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    for (std::size_t t = 0; t < frames.size(); ++t) column[t] = frames[t][k];
    // Sorted summation of offsets from the minimum: independent of frame order
    // and exact when every frame agrees.
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v - column.front();
    out[k] = column.front() + sum / static_cast<double>(frames.size());
  }
  return out;
}

double normalize_value(double x, const NormBound& bound) {
  if (bound.constant()) return 0.5;
  return std::clamp((x - bound.min) / (bound.max - bound.min), 0.0, 1.0);
}

std::vector<double> normalize(std::span<const double> raw, std::span<const NormBound> bounds) {
  if (raw.size() != bounds.size()) throw DomainError("normalize: dimension mismatch");
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = normalize_value(raw[i], bounds[i]);
  return out;
}

FeatureVector normalize(const FeatureVector& raw, std::span<const NormBound> bounds) {
  if (bounds.size() != kFeatureCount) throw DomainError("normalize: dimension mismatch");
  FeatureVector out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) out[i] = normalize_value(raw[i], bounds[i]);
  return out;
}

void TrainingSet::validate() const {
  if (feature_names.empty()) throw InputError("training set: no feature columns");
  if (rows.empty()) throw InputError("training set: no rows");
  for (const auto& r : rows) {
    if (r.features.size() != feature_names.size()) {
      throw InputError("training set: row width does not match header");
    }
    for (double v : r.features) {
      if (!std::isfinite(v)) throw InputError("training set: non-finite feature in " + r.content_id);
    }
    if (!std::isfinite(r.target) || r.target < 0.0 || r.target > 100.0) {
      throw InputError("training set: target outside [0,100] in " + r.content_id);
    }
  }
}

TrainingSet TrainingSet::select(std::span<const std::string> names) const {
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    const auto it = std::find(feature_names.begin(), feature_names.end(), n);
    if (it == feature_names.end()) throw DomainError("training set: missing feature " + n);
    idx.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  TrainingSet out;
  out.feature_names.assign(names.begin(), names.end());
  out.rows.reserve(rows.size());
  for (const auto& r : rows) {
    TrainingRow nr{r.content_id, {}, r.target};
    for (std::size_t i : idx) nr.features.push_back(r.features[i]);
    out.rows.push_back(std::move(nr));
  }
  return out;
}

std::string fingerprint(const VifConfig& cfg) {
  std::ostringstream s;
  s << "vif;noise_var=" << csv::format_double(cfg.sigma_noise_sq) << ";windows=";
  for (std::size_t i = 0; i < cfg.window_sizes.size(); ++i) {
    s << (i ? "," : "") << cfg.window_sizes[i];
  }
  return s.str();
}

std::string fingerprint(const AdmConfig& cfg) {
  std::ostringstream s;
  s << "adm;angle=" << csv::format_double(cfg.angle_threshold_deg)
    << ";mask=" << cfg.masking_size << ";p=" << csv::format_double(cfg.minkowski_p)
    << ";border=" << csv::format_double(cfg.border_fraction) << ";csf=";
  bool first = true;
  for (const auto& level : cfg.csf) {
    for (double w : level) {
      s << (first ? "" : ",") << csv::format_double(w);
      first = false;
    }
  }
  return s.str();
}

std::map<std::string, std::string> extractor_metadata(const ExtractOptions& opts) {
  return {{"n_quant", std::to_string(opts.n_quant)},
          {"vif_config", fingerprint(opts.vif)},
          {"adm_config", fingerprint(opts.adm)}};
}

void check_extractor_metadata(const SvrModel& model, const ExtractOptions& opts) {
  for (const auto& [key, value] : extractor_metadata(opts)) {
    const auto it = model.metadata.find(key);
    if (it == model.metadata.end()) {
      throw DomainError("model lacks extractor metadata '" + key + "'");
    }
    if (it->second != value) {
      throw DomainError("model was trained with " + key + "=" + it->second +
                        " but features use " + value);
    }
  }
}

SvrModel train_svr(const TrainingSet& data, const SvrConfig& cfg,
                   std::map<std::string, std::string> metadata) {
  data.validate();
  cfg.validate();
  const std::size_t dim = data.feature_names.size();

  SvrModel model;
  model.feature_names = data.feature_names;
  model.config = cfg;
  model.metadata = std::move(metadata);
  model.norm_bounds.assign(dim, NormBound{});
  for (std::size_t k = 0; k < dim; ++k) {
    double lo = data.rows.front().features[k];
    double hi = lo;
    for (const auto& r : data.rows) {
      lo = std::min(lo, r.features[k]);
      hi = std::max(hi, r.features[k]);
    }
    model.norm_bounds[k] = {lo, hi};
  }

  const double first_target = data.rows.front().target;
  const bool all_equal = std::all_of(data.rows.begin(), data.rows.end(),
                                     [&](const TrainingRow& r) { return r.target == first_target; });
  if (all_equal) {
    model.degenerate = true;
    model.bias = first_target;
    return model;
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> targets;
  rows.reserve(data.rows.size());
  for (const auto& r : data.rows) {
    rows.push_back(normalize(r.features, model.norm_bounds));
    targets.push_back(r.target);
  }
  const NuSvrSolution sol = solve_nu_svr(rows, targets, cfg);
  if (!sol.converged) throw InvariantError("svr: solver hit the iteration limit");
  model.bias = sol.bias;
  model.coefficients = sol.coefficients;
  for (std::size_t i : sol.support_indices) model.support_vectors.push_back(rows[i]);
  return model;
}

double predict(const SvrModel& model, std::span<const std::string> names,
               std::span<const double> raw) {
  if (names.size() != raw.size()) throw DomainError("predict: names and values differ in length");
  if (model.norm_bounds.size() != model.feature_names.size()) {
    throw InvariantError("predict: model bounds do not match its feature names");
  }
  std::vector<double> x(model.feature_names.size());
  for (std::size_t k = 0; k < model.feature_names.size(); ++k) {
    const auto it = std::find(names.begin(), names.end(), model.feature_names[k]);
    if (it == names.end()) {
      throw DomainError("predict: missing feature '" + model.feature_names[k] + "'");
    }
    x[k] = normalize_value(raw[static_cast<std::size_t>(it - names.begin())], model.norm_bounds[k]);
  }
  double score = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    score += model.coefficients[i] * rbf_kernel(x, model.support_vectors[i], model.config.gamma);
  }
  return std::clamp(score, 0.0, 100.0);
}

double predict(const SvrModel& model, const FeatureVector& features) {
  static const std::vector<std::string> names = FeatureVector::names();
  return predict(model, names, features.values);
}

std::vector<GridCell> grid_search(const TrainingSet& data,
                                  std::span<const TrainingSet> validation,
                                  const GridOptions& opts) {
  if (validation.empty()) throw InputError("grid_search: no validation sets");
  if (opts.log2_c.empty() || opts.log2_gamma.empty()) throw InputError("grid_search: empty grid");
  data.validate();
  for (const auto& v : validation) v.validate();

  std::vector<GridCell> cells(opts.log2_c.size() * opts.log2_gamma.size());
  parallel_for(cells.size(), opts.threads, [&](std::size_t idx) {
    GridCell& cell = cells[idx];
    cell.c = std::ldexp(1.0, opts.log2_c[idx / opts.log2_gamma.size()]);
    cell.gamma = std::ldexp(1.0, opts.log2_gamma[idx % opts.log2_gamma.size()]);
    SvrConfig cfg;
    cfg.c = cell.c;
    cfg.gamma = cell.gamma;
    cfg.nu = opts.nu;
    const SvrModel model = train_svr(data, cfg);

    for (const auto& set : validation) {
      std::vector<double> pred, mos;
      for (const auto& r : set.rows) {
        pred.push_back(predict(model, set.feature_names, r.features));
        mos.push_back(r.target);
      }
      double r = 0.0;
      try {
        r = srocc(pred, mos);
      } catch (const DomainError&) {
        r = 0.0;  // constant predictions carry no rank information
      }
      cell.srocc.push_back(r);
    }
    cell.overall_srocc = fisher_overall(cell.srocc).r;

    if (opts.monotonicity) {
      std::vector<std::vector<double>> grid;
      for (const auto& row : *opts.monotonicity) {
        auto& g = grid.emplace_back();
        for (const auto& fv : row) g.push_back(predict(model, fv));
      }
      const MonotonicityReport report = monotonicity_check(grid);
      cell.violations = report.violations.size();
      cell.monotone = report.violations.empty();
    }
  });
  return cells;
}

}  // namespace vmafc
