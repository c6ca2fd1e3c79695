#include "vmafc/video_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "vmafc/errors.hpp"

namespace vmafc {

PlaneBuffer::PlaneBuffer(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw GeometryError("plane dimensions must be positive");
  if (samples.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw GeometryError("plane sample count does not match " + std::to_string(width) + "x" +
                        std::to_string(height));
  }
  samples_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(samples));
}

PlaneBuffer PlaneBuffer::filled(int width, int height, std::uint8_t value) {
  if (width < 1 || height < 1) throw GeometryError("plane dimensions must be positive");
  return PlaneBuffer(width, height,
                     std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, value));
}

std::span<const std::uint8_t> PlaneBuffer::samples() const noexcept {
  if (!samples_) return {};
  return {samples_->data(), samples_->size()};
}

bool operator==(const PlaneBuffer& a, const PlaneBuffer& b) {
  if (!a.same_geometry(b)) return false;
  const auto sa = a.samples();
  const auto sb = b.samples();
  return std::equal(sa.begin(), sa.end(), sb.begin(), sb.end());
}

Yuv420Frame::Yuv420Frame(PlaneBuffer y, PlaneBuffer cb, PlaneBuffer cr)
    : y_(std::move(y)), cb_(std::move(cb)), cr_(std::move(cr)) {
  if (y_.empty() || cb_.empty() || cr_.empty()) throw GeometryError("frame is missing a plane");
  if (y_.width() % 2 != 0 || y_.height() % 2 != 0) {
    throw GeometryError("4:2:0 frames need even luma dimensions, got " +
                        std::to_string(y_.width()) + "x" + std::to_string(y_.height()));
  }
  const int cw = y_.width() / 2;
  const int ch = y_.height() / 2;
  if (cb_.width() != cw || cb_.height() != ch || cr_.width() != cw || cr_.height() != ch) {
    throw GeometryError("chroma planes must be half the luma size");
  }
}

VideoSequence::VideoSequence(std::vector<Yuv420Frame> frames, std::optional<double> frame_rate)
    : frames_(std::move(frames)), frame_rate_(frame_rate) {
  if (frames_.empty()) throw InputError("video sequence has no frames");
  for (const auto& f : frames_) {
    if (!f.same_geometry(frames_.front())) {
      throw GeometryError("frames in a sequence must share dimensions");
    }
  }
}

std::size_t yuv420_frame_bytes(int width, int height) {
  if (width < 2 || height < 2 || width % 2 != 0 || height % 2 != 0) {
    throw GeometryError("4:2:0 dimensions must be even and positive, got " +
                        std::to_string(width) + "x" + std::to_string(height));
  }
  const auto luma = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  return luma + luma / 2;
}

Yuv420Frame frame_from_bytes(std::span<const std::uint8_t> bytes, int width, int height) {
  const std::size_t total = yuv420_frame_bytes(width, height);
  if (bytes.size() != total) throw FormatError("frame payload has the wrong size");
  const std::size_t luma = static_cast<std::size_t>(width) * height;
  const std::size_t chroma = luma / 4;
  auto slice = [&](std::size_t off, std::size_t n) {
    return std::vector<std::uint8_t>(bytes.begin() + off, bytes.begin() + off + n);
  };
  return Yuv420Frame(PlaneBuffer(width, height, slice(0, luma)),
                     PlaneBuffer(width / 2, height / 2, slice(luma, chroma)),
                     PlaneBuffer(width / 2, height / 2, slice(luma + chroma, chroma)));
}

namespace {

void write_frame(std::ostream& out, const Yuv420Frame& f) {
  for (const PlaneBuffer* p : {&f.y(), &f.cb(), &f.cr()}) {
    const auto s = p->samples();
    out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size()));
  }
}

// Reads exactly n bytes; returns the count actually read.
std::size_t read_exact(std::istream& in, std::vector<std::uint8_t>& buf, std::size_t n) {
  buf.resize(n);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount());
}

int parse_int_token(std::string_view tok, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw FormatError("y4m header: bad " + std::string(what) + " '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

VideoSequence read_y4m(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || in.eof()) throw FormatError("y4m: missing header line");
  std::istringstream tokens(header);
  std::string magic;
  tokens >> magic;
  if (magic != "YUV4MPEG2") throw FormatError("y4m: stream does not start with YUV4MPEG2");

  int width = 0;
  int height = 0;
  std::optional<double> rate;
  std::string tok;
  while (tokens >> tok) {
    const std::string_view body = std::string_view(tok).substr(1);
    switch (tok.front()) {
      case 'W':
        width = parse_int_token(body, "width");
        break;
      case 'H':
        height = parse_int_token(body, "height");
        break;
      case 'F': {
        const auto colon = body.find(':');
        if (colon == std::string_view::npos) throw FormatError("y4m header: bad frame rate");
        const int num = parse_int_token(body.substr(0, colon), "frame rate");
        const int den = parse_int_token(body.substr(colon + 1), "frame rate");
        if (num <= 0 || den <= 0) throw FormatError("y4m header: bad frame rate");
        rate = static_cast<double>(num) / den;
        break;
      }
      case 'C': {
        // 4:2:0 8-bit variants differ only in chroma siting.
        static constexpr std::array<std::string_view, 4> kAccepted = {"420", "420jpeg",
                                                                       "420paldv", "420mpeg2"};
        if (std::find(kAccepted.begin(), kAccepted.end(), body) == kAccepted.end()) {
          throw FormatError("y4m: unsupported colorspace C" + std::string(body) +
                            " (only 8-bit 4:2:0 is supported)");
        }
        break;
      }
      default:
        break;  // I, A, X: irrelevant here
    }
  }
  if (width <= 0 || height <= 0) throw FormatError("y4m header: missing W or H");
  const std::size_t frame_bytes = yuv420_frame_bytes(width, height);

  std::vector<Yuv420Frame> frames;
  std::vector<std::uint8_t> buf;
  std::string frame_line;
  while (true) {
    if (in.peek() == std::char_traits<char>::eof()) break;
    if (!std::getline(in, frame_line) || in.eof()) {
      throw FormatError("y4m: truncated frame header after frame " +
                        std::to_string(frames.size()));
    }
    if (frame_line.rfind("FRAME", 0) != 0) {
      throw FormatError("y4m: expected FRAME marker after frame " +
                        std::to_string(frames.size()));
    }
    if (read_exact(in, buf, frame_bytes) != frame_bytes) {
      throw FormatError("y4m: truncated frame payload at frame " +
                        std::to_string(frames.size()));
    }
    frames.push_back(frame_from_bytes(buf, width, height));
  }
  if (frames.empty()) throw FormatError("y4m: stream has no frames");
  return VideoSequence(std::move(frames), rate);
}

VideoSequence read_raw_yuv(std::istream& in, int width, int height) {
  const std::size_t frame_bytes = yuv420_frame_bytes(width, height);
  std::vector<Yuv420Frame> frames;
  std::vector<std::uint8_t> buf;
  while (true) {
    const std::size_t got = read_exact(in, buf, frame_bytes);
    if (got == 0) break;
    if (got != frame_bytes) {
      throw FormatError("raw yuv: stream length is not a multiple of the frame size " +
                        std::to_string(frame_bytes));
    }
    frames.push_back(frame_from_bytes(buf, width, height));
  }
  if (frames.empty()) throw FormatError("raw yuv: stream is empty");
  return VideoSequence(std::move(frames));
}

void write_y4m(std::ostream& out, const VideoSequence& seq) {
  out << "YUV4MPEG2 W" << seq.width() << " H" << seq.height();
  if (const auto r = seq.frame_rate()) {
    // Integral rates are written exactly; others as a /1000 fraction.
    const double rounded = std::round(*r);
    if (std::abs(*r - rounded) < 1e-9) {
      out << " F" << static_cast<long>(rounded) << ":1";
    } else {
      out << " F" << static_cast<long>(std::llround(*r * 1000.0)) << ":1000";
    }
  }
  out << " Ip A1:1 C420jpeg\n";
  for (const auto& f : seq.frames()) {
    out << "FRAME\n";
    write_frame(out, f);
  }
}

void write_raw_yuv(std::ostream& out, const VideoSequence& seq) {
  for (const auto& f : seq.frames()) write_frame(out, f);
}

VideoSequence read_video(const std::filesystem::path& path, std::optional<int> width,
                         std::optional<int> height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".y4m") return read_y4m(in);
  if (!width || !height) {
    throw InputError("raw yuv input " + path.string() + " needs --width and --height");
  }
  return read_raw_yuv(in, *width, *height);
}

namespace {

// BT.709 luma weights.
constexpr double kKr = 0.2126;
constexpr double kKb = 0.0722;
constexpr double kKg = 1.0 - kKr - kKb;

std::uint8_t to_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

}  // namespace

RgbFrame yuv420_to_rgb444(const Yuv420Frame& frame) {
  const int w = frame.width();
  const int h = frame.height();
  const double ys = 255.0 / 219.0;
  const double cs = 255.0 / 224.0;
  const double r_cr = 2.0 * (1.0 - kKr) * cs;
  const double g_cb = -2.0 * kKb * (1.0 - kKb) / kKg * cs;
  const double g_cr = -2.0 * kKr * (1.0 - kKr) / kKg * cs;
  const double b_cb = 2.0 * (1.0 - kKb) * cs;

  std::vector<std::uint8_t> r(static_cast<std::size_t>(w) * h);
  std::vector<std::uint8_t> g(r.size());
  std::vector<std::uint8_t> b(r.size());
  for (int y = 0; y < h; ++y) {
    const auto yrow = frame.y().row(y);
    const auto cbrow = frame.cb().row(y / 2);
    const auto crrow = frame.cr().row(y / 2);
    for (int x = 0; x < w; ++x) {
      const double luma = (yrow[x] - 16.0) * ys;
      const double cb = cbrow[x / 2] - 128.0;
      const double cr = crrow[x / 2] - 128.0;
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      r[i] = to_u8(luma + r_cr * cr);
      g[i] = to_u8(luma + g_cb * cb + g_cr * cr);
      b[i] = to_u8(luma + b_cb * cb);
    }
  }
  return {PlaneBuffer(w, h, std::move(r)), PlaneBuffer(w, h, std::move(g)),
          PlaneBuffer(w, h, std::move(b))};
}

namespace {

PlaneBuffer quantize_plane(const PlaneBuffer& p, int step) {
  std::array<std::uint8_t, 256> lut{};
  for (int s = 0; s < 256; ++s) {
    // Nearest level, ties toward the neutral axis so a single level maps to 128.
    const double q = (s - 128.0) / step;
    const double level = std::copysign(std::ceil(std::abs(q) - 0.5), q);
    lut[s] = to_u8(level * step + 128.0);
  }
  std::vector<std::uint8_t> out(p.size());
  const auto in = p.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = lut[in[i]];
  return PlaneBuffer(p.width(), p.height(), std::move(out));
}

void check_step(int step) {
  if (step < 1) throw DomainError("quantizer step must be >= 1, got " + std::to_string(step));
}

}  // namespace

Yuv420Frame degrade_chroma(const Yuv420Frame& frame, int step) {
  check_step(step);
  if (step == 1) return frame;
  return Yuv420Frame(frame.y(), quantize_plane(frame.cb(), step),
                     quantize_plane(frame.cr(), step));
}

Yuv420Frame degrade_luma(const Yuv420Frame& frame, int step) {
  check_step(step);
  if (step == 1) return frame;
  return Yuv420Frame(quantize_plane(frame.y(), step), frame.cb(), frame.cr());
}

VideoSequence degrade_chroma(const VideoSequence& seq, int step) {
  std::vector<Yuv420Frame> out;
  out.reserve(seq.size());
  for (const auto& f : seq.frames()) out.push_back(degrade_chroma(f, step));
  return VideoSequence(std::move(out), seq.frame_rate());
}

}  // namespace vmafc
