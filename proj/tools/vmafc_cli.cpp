// vmafc command-line front end.
//
// Every subcommand writes one table, as CSV (default) or JSON, to stdout or
// to --output. Exit codes: 0 success, 2 bad input, 1 anything else.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vmafc/csv.hpp"
#include "vmafc/parallel.hpp"
#include "vmafc/vmafc.hpp"

namespace {

using nlohmann::json;
using namespace vmafc;

using Cell = std::variant<std::string, double, long long, bool>;

struct Report {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  std::string rows_key = "rows";
  /// Scalars and lists reported next to the table.
  json extra = json::object();
};

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return csv::format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "1" : "0";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

std::string extra_text(const json& v) {
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + extra_text(v[i]);
    return out;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return csv::format_double(v.get<double>());
  return v.dump();
}

void write_report(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc = r.extra;
    json rows = json::array();
    for (const auto& row : r.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < r.header.size(); ++i) obj[r.header[i]] = cell_json(row[i]);
      rows.push_back(std::move(obj));
    }
    doc[r.rows_key] = std::move(rows);
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : r.extra.items()) out << "# " << key << '=' << extra_text(value) << '\n';
  for (std::size_t i = 0; i < r.header.size(); ++i) out << (i ? "," : "") << r.header[i];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

struct Common {
  std::string format = "csv";
  std::string output;
  int threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool threads = false) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", c.output, "Output file (default stdout)");
  if (threads) {
    cmd->add_option("--threads", c.threads, "Worker threads for frame-level parallelism")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
  }
}

void emit(const Report& r, const Common& c) {
  if (c.output.empty()) {
    write_report(r, c.format, std::cout);
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw InputError("cannot write " + c.output);
  write_report(r, c.format, out);
}

struct VideoArgs {
  std::optional<int> width;
  std::optional<int> height;
};

void add_geometry(CLI::App* cmd, VideoArgs& v) {
  cmd->add_option("--width", v.width, "Luma width for headerless .yuv input");
  cmd->add_option("--height", v.height, "Luma height for headerless .yuv input");
}

VideoSequence load(const std::string& path, const VideoArgs& v) {
  return read_video(path, v.width, v.height);
}

std::string geometry(const VideoSequence& s) {
  return std::to_string(s.width()) + "x" + std::to_string(s.height());
}

void require_compatible(const VideoSequence& ref, const VideoSequence& dist) {
  if (ref.width() != dist.width() || ref.height() != dist.height()) {
    throw GeometryError("reference is " + geometry(ref) + " but distorted is " + geometry(dist));
  }
  if (ref.size() != dist.size()) {
    throw GeometryError("reference has " + std::to_string(ref.size()) +
                        " frames but distorted has " + std::to_string(dist.size()));
  }
}

std::vector<std::string> feature_header(const std::string& first) {
  std::vector<std::string> h{first};
  for (auto n : kFeatureNames) h.emplace_back(n);
  return h;
}

void append_features(std::vector<Cell>& row, const FeatureVector& f) {
  for (double v : f.values) row.emplace_back(v);
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
  std::string ref, dist, model;
  VideoArgs geom;
  std::optional<int> n_quant;
  Common common;
};

void run_score(const ScoreArgs& a) {
  const SvrModel model = load_model(a.model);
  ExtractOptions opts;
  opts.threads = a.common.threads;
  if (a.n_quant) {
    opts.n_quant = *a.n_quant;
  } else if (auto it = model.metadata.find("n_quant"); it != model.metadata.end()) {
    opts.n_quant = static_cast<int>(csv::to_long(it->second));
  }
  check_extractor_metadata(model, opts);

  const VideoSequence ref = load(a.ref, a.geom);
  const VideoSequence dist = load(a.dist, a.geom);
  require_compatible(ref, dist);
  const auto frames = extract_frame_features(ref, dist, opts);

  Report r;
  r.header = feature_header("frame");
  r.header.emplace_back("score");
  r.rows_key = "frames";
  std::vector<FeatureVector> fused;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    std::vector<Cell> row{static_cast<long long>(t)};
    append_features(row, frames[t].fused);
    row.emplace_back(predict(model, frames[t].fused));
    r.rows.push_back(std::move(row));
    fused.push_back(frames[t].fused);
  }
  const FeatureVector pooled = pool_features(fused);
  const double score = predict(model, pooled);
  std::vector<Cell> row{std::string("pooled")};
  append_features(row, pooled);
  row.emplace_back(score);
  r.rows.push_back(std::move(row));
  r.extra["score"] = score;
  emit(r, a.common);
}

// ------------------------------------------------------------- features

struct FeaturesArgs {
  std::string ref, dist;
  VideoArgs geom;
  int n_quant = 8;
  bool pooled = false;
  std::string content_id;
  std::optional<double> mos;
  Common common;
};

void run_features(const FeaturesArgs& a) {
  const VideoSequence ref = load(a.ref, a.geom);
  const VideoSequence dist = load(a.dist, a.geom);
  require_compatible(ref, dist);
  const auto frames = extract_feature_vector(ref, dist, a.n_quant, a.common.threads);
  Report r;
  if (a.pooled) {
    r.header = feature_header("content_id");
    std::vector<Cell> row{a.content_id.empty() ? a.dist : a.content_id};
    append_features(row, pool_features(frames));
    if (a.mos) {
      r.header.emplace_back("mos");
      row.emplace_back(*a.mos);
    }
    r.rows.push_back(std::move(row));
  } else {
    r.header = feature_header("frame");
    for (std::size_t t = 0; t < frames.size(); ++t) {
      std::vector<Cell> row{static_cast<long long>(t)};
      append_features(row, frames[t]);
      r.rows.push_back(std::move(row));
    }
  }
  emit(r, a.common);
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string data;
  std::string model_out;
  double c = 8.0, gamma = 0.125, nu = 0.5;
  std::vector<std::string> features;
  int n_quant = 8;
  bool grid = false;
  std::vector<std::string> validation;
  Common common;
};

void run_train(const TrainArgs& a) {
  TrainingSet data = read_training_csv(std::filesystem::path(a.data));
  if (!a.features.empty()) data = data.select(a.features);
  if (!a.grid) {
    if (a.model_out.empty()) throw InputError("train: --model is required unless --grid is set");
    SvrConfig cfg;
    cfg.c = a.c;
    cfg.gamma = a.gamma;
    cfg.nu = a.nu;
    ExtractOptions opts;
    opts.n_quant = a.n_quant;
    const SvrModel model = train_svr(data, cfg, extractor_metadata(opts));
    save_model(model, a.model_out);
    Report r;
    r.header = {"rows", "features", "support_vectors", "bias", "degenerate"};
    r.rows.push_back({static_cast<long long>(data.rows.size()),
                      static_cast<long long>(model.feature_names.size()),
                      static_cast<long long>(model.support_vectors.size()), model.bias,
                      model.degenerate});
    if (model.degenerate) std::cerr << "warning: all targets equal; model predicts a constant\n";
    emit(r, a.common);
    return;
  }
  if (a.validation.empty()) throw InputError("train --grid needs at least one --validation set");
  std::vector<TrainingSet> sets;
  for (const auto& v : a.validation) sets.push_back(read_training_csv(std::filesystem::path(v)));
  GridOptions opts;
  opts.nu = a.nu;
  opts.threads = a.common.threads;
  const auto cells = grid_search(data, sets, opts);
  Report r;
  r.header = {"log2_c", "log2_gamma", "c", "gamma"};
  for (std::size_t i = 0; i < sets.size(); ++i) r.header.push_back("srocc_" + std::to_string(i));
  r.header.emplace_back("overall_srocc");
  r.rows_key = "cells";
  for (const auto& cell : cells) {
    std::vector<Cell> row{static_cast<long long>(std::lround(std::log2(cell.c))),
                          static_cast<long long>(std::lround(std::log2(cell.gamma))), cell.c,
                          cell.gamma};
    for (double s : cell.srocc) row.emplace_back(s);
    row.emplace_back(cell.overall_srocc);
    r.rows.push_back(std::move(row));
  }
  emit(r, a.common);
}

// ------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string predictions, mos;
  std::string significance;
  bool weighted = false;
  Common common;
};

std::optional<std::size_t> find_column(const csv::Table& t, const std::string& name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - t.header.begin());
}

csv::Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return csv::read(in);
}

void run_evaluate(const EvaluateArgs& a) {
  const csv::Table pred = read_table(a.predictions);
  const csv::Table mos = read_table(a.mos);
  const std::size_t p_id = pred.column("video_id");
  const std::size_t p_val = pred.column("prediction");
  const auto p_model = find_column(pred, "model");
  const auto p_set = find_column(pred, "dataset");
  const std::size_t m_id = mos.column("video_id");
  const std::size_t m_val = mos.column("mos");
  const auto m_set = find_column(mos, "dataset");

  std::map<std::string, std::pair<double, std::string>> truth;  // id -> (mos, dataset)
  for (const auto& row : mos.rows) {
    if (row.size() < mos.header.size()) throw FormatError("mos csv: short row");
    truth[row[m_id]] = {csv::to_double(row[m_val]), m_set ? row[*m_set] : "all"};
  }

  // model -> dataset -> (pred, mos)
  std::map<std::string, std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>>
      groups;
  std::map<std::string, std::set<std::string>> seen;
  std::vector<std::string> missing;
  for (const auto& row : pred.rows) {
    if (row.size() < pred.header.size()) throw FormatError("prediction csv: short row");
    const std::string model = p_model ? row[*p_model] : "model";
    const auto it = truth.find(row[p_id]);
    if (it == truth.end()) {
      missing.push_back(row[p_id]);
      continue;
    }
    const std::string set = p_set ? row[*p_set] : it->second.second;
    auto& g = groups[model][set];
    g.first.push_back(csv::to_double(row[p_val]));
    g.second.push_back(it->second.first);
    seen[model].insert(row[p_id]);
  }
  for (const auto& [model, ids] : seen) {
    for (const auto& [id, _] : truth) {
      if (!ids.contains(id)) missing.push_back(id + " (no prediction from " + model + ")");
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size(); ++i) list += (i ? ", " : "") + missing[i];
    throw InputError("unmatched video_id values: " + list);
  }

  Report r;
  r.header = {"model", "dataset", "n", "srocc", "plcc", "plcc_fallback"};
  std::map<std::string, std::map<std::string, std::pair<CorrelationSample, CorrelationSample>>>
      samples;  // dataset -> model -> (srocc, plcc)
  for (const auto& [model, sets] : groups) {
    std::vector<double> sroccs, plccs, weights;
    for (const auto& [set, g] : sets) {
      const double s = srocc(g.first, g.second);
      const PlccResult p = plcc_logistic(g.first, g.second);
      r.rows.push_back({model, set, static_cast<long long>(g.first.size()), s, p.plcc, p.fallback});
      sroccs.push_back(s);
      plccs.push_back(p.plcc);
      weights.push_back(static_cast<double>(g.first.size()));
      samples[set][model] = {{s, g.first.size()}, {p.plcc, g.first.size()}};
    }
    std::optional<std::span<const double>> w;
    if (a.weighted) w = std::span<const double>(weights);
    long long total = 0;
    for (double n : weights) total += static_cast<long long>(n);
    r.rows.push_back({model, std::string("overall"), total, fisher_overall(sroccs, w).r,
                      fisher_overall(plccs, w).r, false});
  }
  emit(r, a.common);

  if (!a.significance.empty()) {
    Report sig;
    std::vector<std::string> models;
    for (const auto& [m, _] : groups) models.push_back(m);
    sig.header = {"dataset", "model"};
    sig.header.insert(sig.header.end(), models.begin(), models.end());
    sig.rows_key = "cells";
    for (const auto& [set, per_model] : samples) {
      std::vector<std::string> present;
      std::vector<CorrelationSample> s_srocc, s_plcc;
      for (const auto& [m, pair] : per_model) {
        present.push_back(m);
        s_srocc.push_back(pair.first);
        s_plcc.push_back(pair.second);
      }
      const auto ms = significance_matrix(s_srocc);
      const auto mp = significance_matrix(s_plcc);
      for (std::size_t i = 0; i < present.size(); ++i) {
        std::vector<Cell> row{set, present[i]};
        for (const auto& other : models) {
          const auto j = std::find(present.begin(), present.end(), other);
          if (j == present.end()) {
            row.emplace_back(std::string(""));
            continue;
          }
          const auto k = static_cast<std::size_t>(j - present.begin());
          row.emplace_back(significance_symbol(ms[i][k]) + "/" + significance_symbol(mp[i][k]));
        }
        sig.rows.push_back(std::move(row));
      }
    }
    Common c = a.common;
    c.output = a.significance;
    emit(sig, c);
  }
}

// ------------------------------------------------------------------ mos

struct MosArgs {
  std::string scores;
  Common common;
};

void run_mos(const MosArgs& a) {
  const MosReport rep = process_scores(read_score_csv(std::filesystem::path(a.scores)));
  Report r;
  r.header = {"video_id", "mos", "std_error", "ci95", "n_raters"};
  r.rows_key = "videos";
  for (const auto& v : rep.videos) {
    r.rows.push_back({v.video_id, v.mos, v.std_error, v.ci95, static_cast<long long>(v.n_raters)});
  }
  r.extra["rejected_subjects"] = rep.rejected_subjects;
  emit(r, a.common);
}

// ---------------------------------------------------------- descriptors

struct DescriptorArgs {
  std::vector<std::string> inputs;
  VideoArgs geom;
  Common common;
};

void run_descriptors(const DescriptorArgs& a) {
  Report r;
  r.header = {"content_id", "si", "ti", "cf"};
  for (const auto& path : a.inputs) {
    const ContentDescriptors d = si_ti_cf(load(path, a.geom));
    r.rows.push_back({std::filesystem::path(path).stem().string(), d.si, d.ti, d.cf});
  }
  emit(r, a.common);
}

// ------------------------------------------------------------------- qp

struct QpArgs {
  std::vector<int> qp_y;
  int cb_offset = 0, cr_offset = 0;
  bool unclipped = false;
  Common common;
};

void run_qp(const QpArgs& a) {
  Report r;
  r.header = {"qp_y", "cb_offset", "cr_offset", "clipped", "qp_cb", "qp_cr"};
  std::vector<int> qps = a.qp_y;
  if (qps.empty()) {
    for (int q = 0; q <= 51; ++q) qps.push_back(q);
  }
  for (int q : qps) {
    const auto [cb, cr] = chroma_qp({q, a.cb_offset, a.cr_offset, !a.unclipped});
    r.rows.push_back({static_cast<long long>(q), static_cast<long long>(a.cb_offset),
                      static_cast<long long>(a.cr_offset), !a.unclipped,
                      static_cast<long long>(cb), static_cast<long long>(cr)});
  }
  emit(r, a.common);
}

// --------------------------------------------------------------- bdrate

struct BdArgs {
  std::string anchor;
  std::vector<std::string> tests;
  Common common;
};

void run_bdrate(const BdArgs& a) {
  const RdCurve anchor = read_rd_csv(std::filesystem::path(a.anchor));
  Report r;
  r.header = {"anchor", "test", "bd_rate_percent"};
  for (const auto& t : a.tests) {
    r.rows.push_back({a.anchor, t, bd_rate(anchor, read_rd_csv(std::filesystem::path(t)))});
  }
  emit(r, a.common);
}

// --------------------------------------------------------- monotonicity

struct MonoArgs {
  std::string ref, model, grid_csv;
  VideoArgs geom;
  std::vector<int> crf{15, 25, 35};
  std::vector<int> steps{1, 2, 4, 8, 16, 32, 64, 128};
  double tolerance = kMonotonicityTolerance;
  Common common;
};

// Luma quantizer step standing in for an encoder CRF level.
int pseudo_crf_step(int crf) {
  return std::max(1, static_cast<int>(std::lround(std::exp2((crf - 15) / 6.0))));
}

double delta_qp_of_step(int step) { return 6.0 * std::log2(static_cast<double>(step)); }

void run_monotonicity(const MonoArgs& a) {
  std::vector<std::vector<double>> grid;
  std::vector<double> crf_labels, step_labels;
  if (!a.grid_csv.empty()) {
    const csv::Table t = read_table(a.grid_csv);
    const std::size_t c_crf = t.column("crf");
    const std::size_t c_dq = t.column("delta_qp_c");
    const std::size_t c_pred = t.column("prediction");
    std::map<double, std::map<double, double>> cells;
    for (const auto& row : t.rows) {
      if (row.size() < t.header.size()) throw FormatError("grid csv: short row");
      cells[csv::to_double(row[c_crf])][csv::to_double(row[c_dq])] = csv::to_double(row[c_pred]);
    }
    for (const auto& [crf, by_step] : cells) {
      crf_labels.push_back(crf);
      auto& g = grid.emplace_back();
      std::vector<double> labels;
      for (const auto& [dq, v] : by_step) {
        labels.push_back(dq);
        g.push_back(v);
      }
      if (step_labels.empty()) {
        step_labels = labels;
      } else if (labels != step_labels) {
        throw DomainError("grid csv: every crf needs the same delta_qp_c values");
      }
    }
  } else {
    if (a.ref.empty() || a.model.empty()) {
      throw InputError("monotonicity needs --ref and --model, or --grid");
    }
    const SvrModel model = load_model(a.model);
    ExtractOptions opts;
    opts.threads = a.common.threads;
    if (auto it = model.metadata.find("n_quant"); it != model.metadata.end()) {
      opts.n_quant = static_cast<int>(csv::to_long(it->second));
    }
    check_extractor_metadata(model, opts);
    const VideoSequence ref = load(a.ref, a.geom);
    for (int step : a.steps) step_labels.push_back(delta_qp_of_step(step));
    for (int crf : a.crf) {
      crf_labels.push_back(crf);
      auto& g = grid.emplace_back();
      const int luma_step = pseudo_crf_step(crf);
      for (int step : a.steps) {
        std::vector<Yuv420Frame> frames;
        for (const auto& f : ref.frames()) frames.push_back(degrade_chroma(degrade_luma(f, luma_step), step));
        const VideoSequence dist(std::move(frames), ref.frame_rate());
        const auto fv = extract_frame_features(ref, dist, opts);
        std::vector<FeatureVector> fused;
        for (const auto& f : fv) fused.push_back(f.fused);
        g.push_back(predict(model, pool_features(fused)));
      }
    }
  }

  const MonotonicityReport rep = monotonicity_check(grid, a.tolerance);
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> marks;
  for (const auto& v : rep.violations) {
    auto& m = marks[{v.crf_index, v.step_index}];
    (v.axis == Violation::Axis::kChromaStep ? m.first : m.second) = v.magnitude;
  }
  Report r;
  r.header = {"crf", "delta_qp_c", "prediction", "step_violation", "crf_violation"};
  r.rows_key = "grid";
  for (std::size_t c = 0; c < grid.size(); ++c) {
    for (std::size_t s = 0; s < grid[c].size(); ++s) {
      const auto it = marks.find({c, s});
      const auto m = it == marks.end() ? std::pair<double, double>{0.0, 0.0} : it->second;
      r.rows.push_back({crf_labels[c], step_labels[s], grid[c][s], m.first, m.second});
    }
  }
  r.extra["violations"] = static_cast<long long>(rep.violations.size());
  emit(r, a.common);
}

// -------------------------------------------------------------- classic

struct ClassicArgs {
  std::string ref, dist, weights;
  VideoArgs geom;
  Common common;
};

void run_classic(const ClassicArgs& a) {
  const VideoSequence ref = load(a.ref, a.geom);
  const VideoSequence dist = load(a.dist, a.geom);
  require_compatible(ref, dist);
  const bool cs = !a.weights.empty();
  const ChannelWeights w = cs ? load_channel_weights(a.weights) : ChannelWeights{1.0, 0.0, 0.0};
  Report r;
  r.header = {"frame", "psnr_y", "psnr_cb", "psnr_cr", "psnr_411", "psnr_611", "ssim_y"};
  if (cs) r.header.emplace_back("cspsnr");
  const bool ms = ref.width() >= 176 && ref.height() >= 176;
  if (ms) r.header.emplace_back("ms_ssim_y");
  std::vector<std::vector<Cell>> rows(ref.size());
  parallel_for(ref.size(), a.common.threads, [&](std::size_t t) {
    const PsnrReport p = psnr_family(ref[t], dist[t], w);
    std::vector<Cell> row{static_cast<long long>(t), p.psnr_y, p.psnr_cb, p.psnr_cr,
                          p.psnr_411, p.psnr_611, ssim_plane(ref[t].y(), dist[t].y())};
    if (cs) row.emplace_back(p.cspsnr);
    if (ms) row.emplace_back(ms_ssim_plane(ref[t].y(), dist[t].y()));
    rows[t] = std::move(row);
  });
  r.rows = std::move(rows);
  emit(r, a.common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chroma-aware video quality toolkit"};
  app.require_subcommand(1);

  ScoreArgs score;
  auto* c_score = app.add_subcommand("score", "Score a distorted video against its reference");
  c_score->add_option("--ref", score.ref, "Reference video")->required();
  c_score->add_option("--dist", score.dist, "Distorted video")->required();
  c_score->add_option("--model", score.model, "Model file")->required();
  c_score->add_option("--n-quant", score.n_quant, "Chroma quantizer levels (default from model)")
      ->check(CLI::PositiveNumber);
  add_geometry(c_score, score.geom);
  add_common(c_score, score.common, true);

  FeaturesArgs feat;
  auto* c_feat = app.add_subcommand("features", "Extract per-frame or pooled fused features");
  c_feat->add_option("--ref", feat.ref, "Reference video")->required();
  c_feat->add_option("--dist", feat.dist, "Distorted video")->required();
  c_feat->add_option("--n-quant", feat.n_quant, "Chroma quantizer levels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_feat->add_flag("--pooled", feat.pooled, "Emit one pooled row in training-csv layout");
  c_feat->add_option("--content-id", feat.content_id, "content_id for the pooled row");
  c_feat->add_option("--mos", feat.mos, "Target MOS appended to the pooled row");
  add_geometry(c_feat, feat.geom);
  add_common(c_feat, feat.common, true);

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Train a model or run the (C, gamma) grid");
  c_train->add_option("--data", train.data, "Training csv")->required();
  c_train->add_option("--model", train.model_out, "Where to write the model");
  c_train->add_option("--c", train.c, "Penalty")->capture_default_str();
  c_train->add_option("--gamma", train.gamma, "RBF width")->capture_default_str();
  c_train->add_option("--nu", train.nu, "nu")->capture_default_str();
  c_train->add_option("--features", train.features, "Feature columns to use")->delimiter(',');
  c_train->add_option("--n-quant", train.n_quant, "Quantizer levels the features were made with")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_train->add_flag("--grid", train.grid, "Report validation SROCC over the 11x11 grid");
  c_train->add_option("--validation", train.validation, "Validation csv (repeatable)");
  add_common(c_train, train.common, true);

  EvaluateArgs eval;
  auto* c_eval = app.add_subcommand("evaluate", "SROCC/PLCC per dataset and overall");
  c_eval->add_option("--predictions", eval.predictions, "video_id,prediction[,model][,dataset]")
      ->required();
  c_eval->add_option("--mos", eval.mos, "video_id,mos[,dataset]")->required();
  c_eval->add_option("--significance", eval.significance, "Write the significance matrix here");
  c_eval->add_flag("--weighted", eval.weighted, "Weight the overall Fisher mean by dataset size");
  add_common(c_eval, eval.common);

  MosArgs mos;
  auto* c_mos = app.add_subcommand("mos", "Raw opinion scores to MOS");
  c_mos->add_option("--scores", mos.scores, "subject_id,video_id,session,raw_score")->required();
  add_common(c_mos, mos.common);

  DescriptorArgs desc;
  auto* c_desc = app.add_subcommand("descriptors", "SI, TI and colorfulness per video");
  c_desc->add_option("inputs", desc.inputs, "Videos")->required();
  add_geometry(c_desc, desc.geom);
  add_common(c_desc, desc.common);

  QpArgs qp;
  auto* c_qp = app.add_subcommand("qp", "Chroma QP from luma QP and offsets");
  c_qp->add_option("--qp-y", qp.qp_y, "Luma QP (default: all of 0..51)")->delimiter(',');
  c_qp->add_option("--cb-offset", qp.cb_offset, "Cb offset")->capture_default_str();
  c_qp->add_option("--cr-offset", qp.cr_offset, "Cr offset")->capture_default_str();
  c_qp->add_flag("--unclipped", qp.unclipped, "Do not clip offsets to [-12, 12]");
  add_common(c_qp, qp.common);

  BdArgs bd;
  auto* c_bd = app.add_subcommand("bdrate", "BD-rate of test curves against an anchor");
  c_bd->add_option("--anchor", bd.anchor, "bitrate_kbps,quality")->required();
  c_bd->add_option("--test", bd.tests, "bitrate_kbps,quality (repeatable)")->required();
  add_common(c_bd, bd.common);

  MonoArgs mono;
  auto* c_mono = app.add_subcommand("monotonicity", "Quality grid over CRF and chroma degradation");
  c_mono->add_option("--ref", mono.ref, "Reference video");
  c_mono->add_option("--model", mono.model, "Model file");
  c_mono->add_option("--grid", mono.grid_csv, "Precomputed crf,delta_qp_c,prediction csv");
  c_mono->add_option("--crf", mono.crf, "Pseudo-CRF levels")->delimiter(',')->capture_default_str();
  c_mono->add_option("--steps", mono.steps, "Chroma quantizer steps")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_mono->add_option("--tolerance", mono.tolerance, "Allowed increase")->capture_default_str();
  add_geometry(c_mono, mono.geom);
  add_common(c_mono, mono.common, true);

  ClassicArgs classic;
  auto* c_classic = app.add_subcommand("classic", "Per-frame PSNR family and SSIM");
  c_classic->add_option("--ref", classic.ref, "Reference video")->required();
  c_classic->add_option("--dist", classic.dist, "Distorted video")->required();
  c_classic->add_option("--weights", classic.weights, "JSON channel weights enabling CSPSNR");
  add_geometry(c_classic, classic.geom);
  add_common(c_classic, classic.common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_score) run_score(score);
    else if (*c_feat) run_features(feat);
    else if (*c_train) run_train(train);
    else if (*c_eval) run_evaluate(eval);
    else if (*c_mos) run_mos(mos);
    else if (*c_desc) run_descriptors(desc);
    else if (*c_qp) run_qp(qp);
    else if (*c_bd) run_bdrate(bd);
    else if (*c_mono) run_monotonicity(mono);
    else if (*c_classic) run_classic(classic);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
