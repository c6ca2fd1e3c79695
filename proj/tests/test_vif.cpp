#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "vmafc/errors.hpp"
#include "vmafc/vif.hpp"

using namespace vmafc;
namespace t = vmafc::testing;

TEST(Vif, IdentityIsOne) {
  auto p = t::texture_plane(128, 128, 1);
  auto s = vif_multiscale(p, p);
  for (double v : s.scale) EXPECT_NEAR(v, 1.0, 1e-9);
  EXPECT_NEAR(s.overall, 1.0, 1e-9);
}

TEST(Vif, ConstantPlanesAreOne) {
  auto s = vif_multiscale(PlaneBuffer::filled(64, 64, 30), PlaneBuffer::filled(64, 64, 200));
  for (double v : s.scale) EXPECT_EQ(v, 1.0);
}

TEST(Vif, NoiseHurtsFineScalesMore) {
  auto ref = t::texture_plane(128, 128, 2);
  auto dist = t::add_noise(ref, 32, 3);
  auto s = vif_multiscale(ref, dist);
  EXPECT_GT(s.s3(), s.s0());
  EXPECT_LT(s.s0(), 1.0);
}

TEST(Vif, MonotoneInNoiseAmplitude) {
  auto ref = t::texture_plane(128, 128, 4, 128.0, 40.0);
  std::array<double, kVifScales> prev{};
  prev.fill(2.0);
  for (int amp : {2, 6, 12, 24, 48}) {
    auto s = vif_multiscale(ref, t::add_noise(ref, amp, 99));
    for (int k = 0; k < kVifScales; ++k) {
      EXPECT_LE(s.scale[k], prev[k]) << "amp " << amp << " scale " << k;
      prev[k] = s.scale[k];
    }
  }
}

TEST(Vif, OffsetInvariance) {
  auto ref = t::texture_plane(96, 96, 5, 128.0, 40.0, 4.0);
  auto dist = t::add_noise(ref, 16, 6);
  auto base = vif_multiscale(ref, dist);
  for (int delta : {-30, 25}) {
    auto s = vif_multiscale(t::offset_plane(ref, delta), t::offset_plane(dist, delta));
    for (int k = 0; k < kVifScales; ++k) EXPECT_NEAR(s.scale[k], base.scale[k], 1e-9);
  }
}

TEST(Vif, FuzzStaysFinite) {
  std::mt19937 rng(7);
  for (int i = 0; i < 12; ++i) {
    PlaneBuffer a, b;
    switch (i % 4) {
      case 0: a = t::random_plane(40, 40, rng()); b = t::random_plane(40, 40, rng()); break;
      case 1: a = PlaneBuffer::filled(40, 40, 0); b = t::random_plane(40, 40, rng()); break;
      case 2: a = t::random_plane(40, 40, rng()); b = PlaneBuffer::filled(40, 40, 255); break;
      default: a = PlaneBuffer::filled(40, 40, 255); b = PlaneBuffer::filled(40, 40, 0); break;
    }
    auto s = vif_multiscale(a, b);
    for (double v : s.scale) EXPECT_TRUE(std::isfinite(v));
    EXPECT_TRUE(std::isfinite(s.overall));
  }
}

TEST(Vif, ConfigValidation) {
  VifConfig bad;
  bad.sigma_noise_sq = 0.0;
  EXPECT_THROW(bad.validate(), DomainError);
  VifConfig even;
  even.window_sizes = {17, 8, 5, 3};
  EXPECT_THROW(even.validate(), DomainError);
  auto p = t::random_plane(32, 32, 1);
  EXPECT_THROW(vif_multiscale(p, t::random_plane(32, 30, 1)), GeometryError);
}
