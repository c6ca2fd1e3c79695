#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace vmafc {

/// Immutable 8-bit plane, row-major with contiguous rows. Copies share the
/// underlying storage.
class PlaneBuffer {
 public:
  PlaneBuffer() = default;
  PlaneBuffer(int width, int height, std::vector<std::uint8_t> samples);

  static PlaneBuffer filled(int width, int height, std::uint8_t value);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return size() == 0; }

  std::span<const std::uint8_t> samples() const noexcept;
  std::span<const std::uint8_t> row(int y) const noexcept {
    return samples().subspan(static_cast<std::size_t>(y) * width_, width_);
  }
  std::uint8_t at(int x, int y) const noexcept { return row(y)[x]; }

  bool same_geometry(const PlaneBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::shared_ptr<const std::vector<std::uint8_t>> samples_;
};

bool operator==(const PlaneBuffer& a, const PlaneBuffer& b);

}  // namespace vmafc
