#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "vmafc/descriptors.hpp"
#include "vmafc/errors.hpp"

using namespace vmafc;
namespace t = vmafc::testing;

namespace {

// Squares of `cell` pixels. A one-pixel board has zero Sobel response.
PlaneBuffer checkerboard(int w, int h, int cell) {
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) s[y * w + x] = ((x / cell + y / cell) % 2) ? 200 : 40;
  return PlaneBuffer(w, h, std::move(s));
}

}  // namespace

TEST(Motion, StaticSequenceIsZero) {
  auto f = t::texture_frame(16, 16, 1);
  VideoSequence seq({f, f, f});
  auto m = motion_ti(seq);
  ASSERT_EQ(m.size(), 3u);
  for (double v : m) EXPECT_EQ(v, 0.0);
}

TEST(Motion, UnitStep) {
  VideoSequence seq({t::constant_frame(8, 8, 10), t::constant_frame(8, 8, 11)});
  auto m = motion_ti(seq);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], 0.0);
  EXPECT_EQ(m[1], 1.0);
}

TEST(Motion, SingleFrame) {
  VideoSequence seq({t::texture_frame(8, 8, 2)});
  EXPECT_EQ(motion_ti(seq), std::vector<double>{0.0});
}

TEST(Descriptors, GrayVideoIsZero) {
  VideoSequence seq({t::constant_frame(16, 16, 90), t::constant_frame(16, 16, 90)});
  auto d = si_ti_cf(seq);
  EXPECT_EQ(d.si, 0.0);
  EXPECT_EQ(d.ti, 0.0);
  EXPECT_EQ(d.cf, 0.0);
}

TEST(Descriptors, StaticCheckerboard) {
  auto y = checkerboard(16, 16, 4);
  Yuv420Frame f(y, PlaneBuffer::filled(8, 8, 128), PlaneBuffer::filled(8, 8, 128));
  auto d = si_ti_cf(VideoSequence({f, f, f}));
  EXPECT_EQ(d.ti, 0.0);
  EXPECT_GT(d.si, 0.0);
  EXPECT_EQ(d.cf, 0.0);
}

TEST(Descriptors, PureRedColorfulness) {
  RgbFrame red{PlaneBuffer::filled(8, 8, 255), PlaneBuffer::filled(8, 8, 0),
               PlaneBuffer::filled(8, 8, 0)};
  const double expected = 0.3 * std::sqrt(255.0 * 255.0 + 127.5 * 127.5);
  EXPECT_NEAR(colorfulness(red), expected, 1e-12);
}

TEST(Descriptors, ColorfulnessZeroIffAchromatic) {
  auto g = t::random_plane(16, 16, 4);
  EXPECT_EQ(colorfulness(RgbFrame{g, g, g}), 0.0);
  auto other = t::offset_plane(g, 3);
  EXPECT_GT(colorfulness(RgbFrame{g, other, g}), 0.0);
}

TEST(Descriptors, OffsetInvariance) {
  auto a = t::texture_plane(32, 32, 5, 120.0, 40.0);
  auto b = t::texture_plane(32, 32, 6, 120.0, 40.0);
  EXPECT_NEAR(spatial_information(a), spatial_information(t::offset_plane(a, 20)), 1e-9);
  EXPECT_NEAR(temporal_information(a, b),
              temporal_information(t::offset_plane(a, -15), t::offset_plane(b, -15)), 1e-9);
}

TEST(Descriptors, TemporalIsStdOfDifference) {
  // Difference alternates 0 / 2 in equal halves -> std 1.
  std::vector<std::uint8_t> cur(16, 10);
  for (int i = 0; i < 8; ++i) cur[i] = 12;
  EXPECT_NEAR(temporal_information(PlaneBuffer::filled(4, 4, 10), PlaneBuffer(4, 4, cur)), 1.0,
              1e-12);
  EXPECT_THROW(temporal_information(PlaneBuffer::filled(4, 4, 1), PlaneBuffer::filled(2, 8, 1)),
               GeometryError);
}
