#include "vmafc/subjective.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>

#include "vmafc/csv.hpp"
#include "vmafc/errors.hpp"

namespace vmafc {
namespace {

constexpr double kMinScore = 1.0;
constexpr double kMaxScore = 100.0;
constexpr double kCi95 = 1.96;

struct Stats {
  double mean = 0.0;
  double sd = 0.0;  // unbiased
  std::size_t n = 0;
};

Stats stats_of(const std::vector<double>& v) {
  Stats s;
  s.n = v.size();
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

}  // namespace

void ScoreMatrix::validate() const {
  if (session_of.size() != videos.size()) throw FormatError("scores: session list size mismatch");
  if (scores.size() != subjects.size()) throw FormatError("scores: subject rows mismatch");
  for (const auto& row : scores) {
    if (row.size() != videos.size()) throw FormatError("scores: ragged score matrix");
    for (const auto& s : row) {
      if (s && !(*s >= kMinScore && *s <= kMaxScore)) {
        throw DomainError("scores: raw score outside [1,100]");
      }
    }
  }
}

ScoreMatrix read_score_csv(std::istream& in) {
  const csv::Table table = csv::read(in);
  const std::size_t c_subject = table.column("subject_id");
  const std::size_t c_video = table.column("video_id");
  const std::size_t c_session = table.column("session");
  const std::size_t c_score = table.column("raw_score");
  const std::size_t width = std::max({c_subject, c_video, c_session, c_score}) + 1;

  ScoreMatrix m;
  std::map<std::string, std::size_t> subject_index, video_index;
  struct Entry {
    std::size_t subject, video;
    double score;
  };
  std::vector<Entry> entries;
  for (const auto& row : table.rows) {
    if (row.size() < width) throw FormatError("scores: short row");
    auto [sit, s_new] = subject_index.try_emplace(row[c_subject], m.subjects.size());
    if (s_new) m.subjects.push_back(row[c_subject]);
    const long session = csv::to_long(row[c_session]);
    if (session < 1) throw FormatError("scores: session index must be >= 1");
    auto [vit, v_new] = video_index.try_emplace(row[c_video], m.videos.size());
    if (v_new) {
      m.videos.push_back(row[c_video]);
      m.session_of.push_back(static_cast<int>(session));
    } else if (m.session_of[vit->second] != session) {
      throw FormatError("scores: video " + row[c_video] + " appears in two sessions");
    }
    entries.push_back({sit->second, vit->second, csv::to_double(row[c_score])});
  }
  m.scores.assign(m.subjects.size(),
                  std::vector<std::optional<double>>(m.videos.size(), std::nullopt));
  for (const auto& e : entries) {
    auto& cell = m.scores[e.subject][e.video];
    if (cell) {
      throw FormatError("scores: duplicate score for " + m.subjects[e.subject] + "/" +
                        m.videos[e.video]);
    }
    cell = e.score;
  }
  m.validate();
  return m;
}

ScoreMatrix read_score_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open score csv " + path.string());
  return read_score_csv(in);
}

ZScoreMatrix zscore_by_session(const ScoreMatrix& m) {
  m.validate();
  ZScoreMatrix out;
  out.subjects = m.subjects;
  out.videos = m.videos;
  out.z.assign(m.subjects.size(),
               std::vector<std::optional<double>>(m.videos.size(), std::nullopt));
  std::set<int> sessions(m.session_of.begin(), m.session_of.end());

  for (std::size_t i = 0; i < m.subjects.size(); ++i) {
    std::vector<std::optional<double>> row(m.videos.size());
    bool flagged = false;
    for (int k : sessions) {
      std::vector<double> vals;
      for (std::size_t j = 0; j < m.videos.size(); ++j) {
        if (m.session_of[j] == k && m.scores[i][j]) vals.push_back(*m.scores[i][j]);
      }
      if (vals.empty()) continue;
      const Stats s = stats_of(vals);
      if (s.n < 2 || !(s.sd > 0.0)) {
        flagged = true;
        break;
      }
      for (std::size_t j = 0; j < m.videos.size(); ++j) {
        if (m.session_of[j] == k && m.scores[i][j]) row[j] = (*m.scores[i][j] - s.mean) / s.sd;
      }
    }
    if (flagged) {
      out.zero_spread.insert(i);
    } else {
      out.z[i] = std::move(row);
    }
  }
  return out;
}

std::set<std::size_t> bt500_reject(const ZScoreMatrix& z) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < z.subjects.size(); ++i) {
    if (!z.zero_spread.contains(i)) active.push_back(i);
  }
  if (active.size() < 3) throw InputError("bt500: at least three subjects are required");

  std::vector<long> above(z.subjects.size(), 0), below(z.subjects.size(), 0),
      rated(z.subjects.size(), 0);
  for (std::size_t j = 0; j < z.videos.size(); ++j) {
    std::vector<double> vals;
    for (std::size_t i : active) {
      if (z.z[i][j]) vals.push_back(*z.z[i][j]);
    }
    if (vals.empty()) continue;
    const Stats s = stats_of(vals);
    double m2 = 0.0, m4 = 0.0;
    for (double v : vals) {
      const double d2 = (v - s.mean) * (v - s.mean);
      m2 += d2;
      m4 += d2 * d2;
    }
    m2 /= static_cast<double>(vals.size());
    m4 /= static_cast<double>(vals.size());
    const double kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    const double spread = (kurtosis >= 2.0 && kurtosis <= 4.0) ? 2.0 : std::sqrt(20.0);
    const double threshold = spread * s.sd;
    for (std::size_t i : active) {
      if (!z.z[i][j]) continue;
      const double v = *z.z[i][j];
      ++rated[i];
      if (v > s.mean + threshold) ++above[i];
      if (v < s.mean - threshold) ++below[i];
    }
  }

  std::set<std::size_t> rejected;
  for (std::size_t i : active) {
    const long outliers = above[i] + below[i];
    if (rated[i] == 0 || outliers == 0) continue;
    const double frac = static_cast<double>(outliers) / static_cast<double>(rated[i]);
    const double balance =
        std::abs(static_cast<double>(above[i] - below[i])) / static_cast<double>(outliers);
    if (frac > 0.05 && balance < 0.3) rejected.insert(i);
  }
  return rejected;
}

MosReport compute_mos(const ZScoreMatrix& z, const std::set<std::size_t>& rejected) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < z.subjects.size(); ++i) {
    if (!rejected.contains(i) && !z.zero_spread.contains(i)) kept.push_back(i);
  }
  if (kept.empty()) throw InputError("mos: every subject was rejected");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i : kept) {
    for (const auto& v : z.z[i]) {
      if (v) {
        lo = std::min(lo, *v);
        hi = std::max(hi, *v);
      }
    }
  }
  auto rescale = [&](double v) { return hi > lo ? 100.0 * (v - lo) / (hi - lo) : 50.0; };

  MosReport report;
  for (std::size_t i = 0; i < z.subjects.size(); ++i) {
    if (rejected.contains(i) || z.zero_spread.contains(i)) {
      report.rejected_subjects.push_back(z.subjects[i]);
    }
  }
  for (std::size_t j = 0; j < z.videos.size(); ++j) {
    std::vector<double> vals;
    for (std::size_t i : kept) {
      if (z.z[i][j]) vals.push_back(rescale(*z.z[i][j]));
    }
    VideoMos vm;
    vm.video_id = z.videos[j];
    const Stats s = stats_of(vals);
    vm.n_raters = s.n;
    vm.mos = std::clamp(s.mean, 0.0, 100.0);
    if (s.n < 2) {
      vm.std_error_undefined = true;
    } else {
      vm.std_error = s.sd / std::sqrt(static_cast<double>(s.n));
      vm.ci95 = kCi95 * vm.std_error;
    }
    report.videos.push_back(vm);
  }
  return report;
}

MosReport process_scores(const ScoreMatrix& m) {
  const ZScoreMatrix z = zscore_by_session(m);
  return compute_mos(z, bt500_reject(z));
}

void write_mos_csv(std::ostream& out, const MosReport& report) {
  out << "# rejected_subjects=";
  for (std::size_t i = 0; i < report.rejected_subjects.size(); ++i) {
    out << (i ? ";" : "") << report.rejected_subjects[i];
  }
  out << "\nvideo_id,mos,std_error,ci95,n_raters\n";
  for (const auto& v : report.videos) {
    out << v.video_id << ',' << csv::format_double(v.mos) << ','
        << csv::format_double(v.std_error) << ',' << csv::format_double(v.ci95) << ','
        << v.n_raters << '\n';
  }
}

}  // namespace vmafc
