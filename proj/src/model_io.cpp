#include "vmafc/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vmafc/csv.hpp"
#include "vmafc/errors.hpp"

namespace vmafc {

using nlohmann::json;

std::string model_to_json(const SvrModel& model) {
  json bounds = json::array();
  for (const auto& b : model.norm_bounds) bounds.push_back({{"min", b.min}, {"max", b.max}});
  json doc = {
      {"format", "vmafc-svr"},
      {"format_version", model.format_version},
      {"kernel", {{"type", "rbf"}, {"gamma", model.config.gamma}}},
      {"svr", {{"c", model.config.c}, {"nu", model.config.nu}, {"tolerance", model.config.tolerance}}},
      {"feature_names", model.feature_names},
      {"norm_bounds", bounds},
      {"support_vectors", model.support_vectors},
      {"coefficients", model.coefficients},
      {"bias", model.bias},
      {"degenerate", model.degenerate},
      {"metadata", model.metadata},
  };
  return doc.dump(2) + "\n";
}

SvrModel model_from_json(const std::string& text) {
  SvrModel m;
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != "vmafc-svr") {
      throw FormatError("model: unrecognised format tag");
    }
    m.format_version = doc.at("format_version").get<int>();
    if (m.format_version != kModelFormatVersion) {
      throw FormatError("model: unsupported format version " + std::to_string(m.format_version));
    }
    if (doc.at("kernel").at("type").get<std::string>() != "rbf") {
      throw FormatError("model: only rbf kernels are supported");
    }
    m.config.gamma = doc.at("kernel").at("gamma").get<double>();
    m.config.c = doc.at("svr").at("c").get<double>();
    m.config.nu = doc.at("svr").at("nu").get<double>();
    m.config.tolerance = doc.at("svr").at("tolerance").get<double>();
    m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    for (const auto& b : doc.at("norm_bounds")) {
      m.norm_bounds.push_back({b.at("min").get<double>(), b.at("max").get<double>()});
    }
    m.support_vectors = doc.at("support_vectors").get<std::vector<std::vector<double>>>();
    m.coefficients = doc.at("coefficients").get<std::vector<double>>();
    m.bias = doc.at("bias").get<double>();
    m.degenerate = doc.at("degenerate").get<bool>();
    m.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
  m.config.validate();
  if (m.norm_bounds.size() != m.feature_names.size()) {
    throw FormatError("model: norm_bounds and feature_names differ in length");
  }
  if (m.coefficients.size() != m.support_vectors.size()) {
    throw FormatError("model: coefficients and support_vectors differ in length");
  }
  for (const auto& sv : m.support_vectors) {
    if (sv.size() != m.feature_names.size()) {
      throw FormatError("model: support vector width does not match feature_names");
    }
  }
  for (const auto& b : m.norm_bounds) {
    if (b.max < b.min) throw FormatError("model: norm bound with max < min");
  }
  return m;
}

void save_model(const SvrModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file " + path.string());
  out << model_to_json(model);
  if (!out) throw InputError("failed writing model file " + path.string());
}

SvrModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

TrainingSet read_training_csv(std::istream& in) {
  const csv::Table table = csv::read(in);
  if (table.header.empty() || table.header.front() != "content_id") {
    throw FormatError("training csv: first column must be content_id");
  }
  const std::size_t mos_col = table.column("mos");
  if (mos_col < 2) throw FormatError("training csv: no feature columns before mos");
  TrainingSet set;
  set.feature_names.assign(table.header.begin() + 1,
                           table.header.begin() + static_cast<std::ptrdiff_t>(mos_col));
  for (const auto& row : table.rows) {
    if (row.size() < mos_col + 1) throw FormatError("training csv: short row");
    TrainingRow r;
    r.content_id = row[0];
    for (std::size_t k = 1; k < mos_col; ++k) r.features.push_back(csv::to_double(row[k]));
    r.target = csv::to_double(row[mos_col]);
    set.rows.push_back(std::move(r));
  }
  return set;
}

TrainingSet read_training_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open training csv " + path.string());
  return read_training_csv(in);
}

void write_training_csv(std::ostream& out, const TrainingSet& data) {
  out << "content_id";
  for (const auto& n : data.feature_names) out << ',' << n;
  out << ",mos\n";
  for (const auto& r : data.rows) {
    out << r.content_id;
    for (double v : r.features) out << ',' << csv::format_double(v);
    out << ',' << csv::format_double(r.target) << '\n';
  }
}

}  // namespace vmafc
