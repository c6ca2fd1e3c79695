#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "vmafc/plane.hpp"
#include "vmafc/subjective.hpp"
#include "vmafc/video_io.hpp"

namespace vmafc::testing {

inline std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

/// Uniform random samples.
inline PlaneBuffer random_plane(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h);
  for (auto& v : s) v = static_cast<std::uint8_t>(dist(rng));
  return PlaneBuffer(w, h, std::move(s));
}

/// Smooth sinusoid mix plus mild noise around `mean`; `t` shifts the phases so
/// consecutive frames move.
inline PlaneBuffer texture_plane(int w, int h, std::uint32_t seed, double mean = 128.0,
                                 double amplitude = 60.0, double noise = 8.0, int t = 0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Wave { double fx, fy, phase, amp, speed; };
  std::vector<Wave> waves(4);
  for (auto& wv : waves) {
    wv.fx = 0.01 + 0.12 * u(rng);
    wv.fy = 0.01 + 0.12 * u(rng);
    wv.phase = 6.283185307179586 * u(rng);
    wv.amp = 0.5 + 0.5 * u(rng);
    wv.speed = 0.05 + 0.3 * u(rng);
  }
  double total = 0.0;
  for (const auto& wv : waves) total += wv.amp;
  std::mt19937 nrng(seed * 2654435761u + static_cast<std::uint32_t>(t));
  std::uniform_real_distribution<double> n(-noise, noise);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      for (const auto& wv : waves)
        v += wv.amp * std::sin(6.283185307179586 * (wv.fx * x + wv.fy * y) + wv.phase + wv.speed * t);
      s[static_cast<std::size_t>(y) * w + x] = clamp_u8(mean + amplitude * v / total + n(nrng));
    }
  }
  return PlaneBuffer(w, h, std::move(s));
}

inline Yuv420Frame texture_frame(int w, int h, std::uint32_t seed, int t = 0) {
  return Yuv420Frame(texture_plane(w, h, seed, 128.0, 70.0, 8.0, t),
                     texture_plane(w / 2, h / 2, seed + 101, 128.0, 60.0, 4.0, t),
                     texture_plane(w / 2, h / 2, seed + 202, 128.0, 60.0, 4.0, t));
}

inline VideoSequence texture_sequence(int w, int h, int frames, std::uint32_t seed) {
  std::vector<Yuv420Frame> out;
  out.reserve(frames);
  for (int t = 0; t < frames; ++t) out.push_back(texture_frame(w, h, seed, t));
  return VideoSequence(std::move(out), 24.0);
}

inline Yuv420Frame constant_frame(int w, int h, std::uint8_t y, std::uint8_t cb = 128,
                                  std::uint8_t cr = 128) {
  return Yuv420Frame(PlaneBuffer::filled(w, h, y), PlaneBuffer::filled(w / 2, h / 2, cb),
                     PlaneBuffer::filled(w / 2, h / 2, cr));
}

/// Adds seeded uniform noise in [-amp, amp] and clamps.
inline PlaneBuffer add_noise(const PlaneBuffer& p, int amp, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-amp, amp);
  std::vector<std::uint8_t> s(p.samples().begin(), p.samples().end());
  for (auto& v : s) v = clamp_u8(v + d(rng));
  return PlaneBuffer(p.width(), p.height(), std::move(s));
}

/// Box blur with clamped borders.
inline PlaneBuffer box_blur(const PlaneBuffer& p, int size) {
  const int r = size / 2;
  std::vector<std::uint8_t> s(p.size());
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
          acc += p.at(std::clamp(x + dx, 0, p.width() - 1), std::clamp(y + dy, 0, p.height() - 1));
      s[static_cast<std::size_t>(y) * p.width() + x] = clamp_u8(acc / (size * size));
    }
  }
  return PlaneBuffer(p.width(), p.height(), std::move(s));
}

inline PlaneBuffer offset_plane(const PlaneBuffer& p, int delta) {
  std::vector<std::uint8_t> s(p.samples().begin(), p.samples().end());
  for (auto& v : s) v = clamp_u8(v + delta);
  return PlaneBuffer(p.width(), p.height(), std::move(s));
}

/// Opinion-score fixture: `consistent` raters scoring a latent quality with
/// gaussian noise plus one uniform-random rater (the last subject). Videos are
/// split evenly over `sessions`.
inline ScoreMatrix rater_fixture(std::uint32_t seed, int consistent = 30, int videos = 240,
                                 int sessions = 4, double noise = 6.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> quality(20.0, 75.0);
  std::normal_distribution<double> err(0.0, noise);
  std::uniform_real_distribution<double> random_score(1.0, 100.0);
  ScoreMatrix m;
  std::vector<double> q(static_cast<std::size_t>(videos));
  for (int j = 0; j < videos; ++j) {
    q[j] = quality(rng);
    m.videos.push_back("v" + std::to_string(j));
    m.session_of.push_back(1 + j * sessions / videos);
  }
  for (int i = 0; i <= consistent; ++i) {
    m.subjects.push_back(i < consistent ? "s" + std::to_string(i) : "random");
    auto& row = m.scores.emplace_back();
    for (int j = 0; j < videos; ++j) {
      const double v = i < consistent ? q[j] + err(rng) : random_score(rng);
      row.emplace_back(std::clamp(v, 1.0, 100.0));
    }
  }
  return m;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("vmafc_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace vmafc::testing
