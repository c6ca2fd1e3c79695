#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "vmafc/plane.hpp"

namespace vmafc {

/// One 4:2:0 frame. Luma dimensions are even; chroma planes are exactly half.
class Yuv420Frame {
 public:
  Yuv420Frame() = default;
  Yuv420Frame(PlaneBuffer y, PlaneBuffer cb, PlaneBuffer cr);

  const PlaneBuffer& y() const noexcept { return y_; }
  const PlaneBuffer& cb() const noexcept { return cb_; }
  const PlaneBuffer& cr() const noexcept { return cr_; }
  int width() const noexcept { return y_.width(); }
  int height() const noexcept { return y_.height(); }
  std::size_t byte_size() const noexcept { return y_.size() + cb_.size() + cr_.size(); }

  bool same_geometry(const Yuv420Frame& other) const noexcept {
    return y_.same_geometry(other.y_);
  }

  friend bool operator==(const Yuv420Frame&, const Yuv420Frame&) = default;

 private:
  PlaneBuffer y_, cb_, cr_;
};

struct RgbFrame {
  PlaneBuffer r, g, b;
};

/// Ordered frames sharing one geometry.
class VideoSequence {
 public:
  VideoSequence() = default;
  explicit VideoSequence(std::vector<Yuv420Frame> frames,
                         std::optional<double> frame_rate = std::nullopt);

  const std::vector<Yuv420Frame>& frames() const noexcept { return frames_; }
  const Yuv420Frame& operator[](std::size_t i) const { return frames_[i]; }
  std::size_t size() const noexcept { return frames_.size(); }
  bool empty() const noexcept { return frames_.empty(); }
  int width() const noexcept { return frames_.empty() ? 0 : frames_.front().width(); }
  int height() const noexcept { return frames_.empty() ? 0 : frames_.front().height(); }
  std::optional<double> frame_rate() const noexcept { return frame_rate_; }

 private:
  std::vector<Yuv420Frame> frames_;
  std::optional<double> frame_rate_;
};

/// Frame geometry from luma size; throws GeometryError on odd or non-positive
/// dimensions.
std::size_t yuv420_frame_bytes(int width, int height);

Yuv420Frame frame_from_bytes(std::span<const std::uint8_t> bytes, int width, int height);

VideoSequence read_y4m(std::istream& in);
VideoSequence read_raw_yuv(std::istream& in, int width, int height);
void write_y4m(std::ostream& out, const VideoSequence& seq);
void write_raw_yuv(std::ostream& out, const VideoSequence& seq);

/// Opens `path` and dispatches on extension: ".y4m" uses the header, anything
/// else is headerless planar and needs width/height.
VideoSequence read_video(const std::filesystem::path& path,
                         std::optional<int> width = std::nullopt,
                         std::optional<int> height = std::nullopt);

/// Nearest-neighbour chroma upsampling followed by BT.709 limited-range
/// conversion, rounded and clamped to [0,255].
RgbFrame yuv420_to_rgb444(const Yuv420Frame& frame);

/// Mid-tread quantizer on chroma around 128; luma is passed through.
Yuv420Frame degrade_chroma(const Yuv420Frame& frame, int step);

/// Same quantizer applied to luma only (chroma passed through).
Yuv420Frame degrade_luma(const Yuv420Frame& frame, int step);

VideoSequence degrade_chroma(const VideoSequence& seq, int step);

}  // namespace vmafc
