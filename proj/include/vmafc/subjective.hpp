#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vmafc {

/// Raw opinion scores, subject x video, with missing entries.
struct ScoreMatrix {
  std::vector<std::string> subjects;
  std::vector<std::string> videos;
  /// Session index per video.
  std::vector<int> session_of;
  /// scores[subject][video]
  std::vector<std::vector<std::optional<double>>> scores;

  void validate() const;
};

/// subject_id, video_id, session, raw_score
ScoreMatrix read_score_csv(std::istream& in);
ScoreMatrix read_score_csv(const std::filesystem::path& path);

struct ZScoreMatrix {
  std::vector<std::string> subjects;
  std::vector<std::string> videos;
  std::vector<std::vector<std::optional<double>>> z;
  /// Subjects with a zero-spread (or single-score) session; their rows are empty.
  std::set<std::size_t> zero_spread;
};

/// Per subject and session: (s - mean) / std, unbiased std.
ZScoreMatrix zscore_by_session(const ScoreMatrix& m);

/// Single-pass BT.500 screening over the z-scores. Returns subject indices.
std::set<std::size_t> bt500_reject(const ZScoreMatrix& z);

struct VideoMos {
  std::string video_id;
  double mos = 0.0;
  double std_error = 0.0;
  double ci95 = 0.0;
  std::size_t n_raters = 0;
  /// Fewer than two raters: std_error is reported as 0.
  bool std_error_undefined = false;
};

struct MosReport {
  std::vector<VideoMos> videos;
  std::vector<std::string> rejected_subjects;
};

/// Drops rejected (and zero-spread) subjects, maps the global z range onto
/// [0,100] and averages per video.
MosReport compute_mos(const ZScoreMatrix& z, const std::set<std::size_t>& rejected);

/// zscore -> reject -> mos.
MosReport process_scores(const ScoreMatrix& m);

void write_mos_csv(std::ostream& out, const MosReport& report);

}  // namespace vmafc
