#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "vmafc/errors.hpp"
#include "vmafc/video_io.hpp"

using namespace vmafc;
namespace t = vmafc::testing;

namespace {

std::string y4m_stream(int frames, const std::string& colorspace = "C420", int extra = 0) {
  std::string s = "YUV4MPEG2 W4 H4 F24:1 " + colorspace + "\n";
  for (int f = 0; f < frames; ++f) {
    s += "FRAME\n";
    for (int i = 0; i < 24; ++i) s.push_back(static_cast<char>(f * 24 + i));
  }
  s.append(static_cast<std::size_t>(extra), 'x');
  return s;
}

}  // namespace

TEST(VideoIo, Y4mSingleFrameGeometry) {
  std::istringstream in(y4m_stream(1));
  auto seq = read_y4m(in);
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq[0].y().width(), 4);
  EXPECT_EQ(seq[0].y().height(), 4);
  EXPECT_EQ(seq[0].cb().width(), 2);
  EXPECT_EQ(seq[0].cr().height(), 2);
  EXPECT_EQ(seq[0].y().at(3, 3), 15);
  EXPECT_EQ(seq[0].cb().at(0, 0), 16);
  EXPECT_EQ(seq[0].cr().at(1, 1), 23);
  ASSERT_TRUE(seq.frame_rate().has_value());
  EXPECT_DOUBLE_EQ(*seq.frame_rate(), 24.0);
}

TEST(VideoIo, Y4mRejectsOtherColorspaces) {
  std::istringstream in(y4m_stream(1, "C444"));
  EXPECT_THROW(read_y4m(in), FormatError);
}

TEST(VideoIo, Y4mTruncatedTrailer) {
  std::istringstream in(y4m_stream(2, "C420", 3));
  EXPECT_THROW(read_y4m(in), FormatError);
}

TEST(VideoIo, Y4mBadMagic) {
  std::istringstream in("YUV4MPEG3 W4 H4\n");
  EXPECT_THROW(read_y4m(in), FormatError);
}

TEST(VideoIo, RawDivisibility) {
  std::string bytes(36, '\0');
  std::istringstream in(bytes);
  EXPECT_THROW(read_raw_yuv(in, 4, 4), FormatError);
}

TEST(VideoIo, RawTwoFrames) {
  std::string bytes(48, '\7');
  std::istringstream in(bytes);
  auto seq = read_raw_yuv(in, 4, 4);
  EXPECT_EQ(seq.size(), 2u);
}

TEST(VideoIo, OddWidthRejected) {
  std::string bytes(60, '\0');
  std::istringstream in(bytes);
  EXPECT_THROW(read_raw_yuv(in, 5, 4), GeometryError);
  EXPECT_THROW(yuv420_frame_bytes(5, 4), GeometryError);
}

TEST(VideoIo, RawRoundTripIsByteIdentical) {
  auto seq = t::texture_sequence(16, 8, 3, 5);
  std::ostringstream out;
  write_raw_yuv(out, seq);
  const std::string first = out.str();
  std::istringstream in(first);
  auto back = read_raw_yuv(in, 16, 8);
  std::ostringstream again;
  write_raw_yuv(again, back);
  EXPECT_EQ(first, again.str());
  EXPECT_EQ(back.frames(), seq.frames());
}

TEST(VideoIo, Y4mRoundTrip) {
  auto seq = t::texture_sequence(16, 8, 2, 9);
  std::ostringstream out;
  write_y4m(out, seq);
  std::istringstream in(out.str());
  auto back = read_y4m(in);
  EXPECT_EQ(back.frames(), seq.frames());
}

TEST(VideoIo, ReadVideoDispatchesOnExtension) {
  t::TempDir dir;
  auto seq = t::texture_sequence(8, 8, 2, 1);
  {
    std::ofstream f(dir / "a.y4m", std::ios::binary);
    write_y4m(f, seq);
    std::ofstream g(dir / "a.yuv", std::ios::binary);
    write_raw_yuv(g, seq);
  }
  EXPECT_EQ(read_video(dir / "a.y4m").frames(), seq.frames());
  EXPECT_EQ(read_video(dir / "a.yuv", 8, 8).frames(), seq.frames());
  EXPECT_THROW(read_video(dir / "a.yuv"), InputError);
  EXPECT_THROW(read_video(dir / "missing.y4m"), InputError);
}

TEST(VideoIo, SequenceGeometryMustMatch) {
  std::vector<Yuv420Frame> frames{t::constant_frame(8, 8, 1), t::constant_frame(4, 4, 1)};
  EXPECT_THROW(VideoSequence(std::move(frames)), GeometryError);
  EXPECT_THROW(VideoSequence(std::vector<Yuv420Frame>{}), InputError);
}

TEST(VideoIo, ChromaHalfSizeEnforced) {
  EXPECT_THROW(Yuv420Frame(PlaneBuffer::filled(8, 8, 0), PlaneBuffer::filled(3, 4, 0),
                           PlaneBuffer::filled(4, 4, 0)),
               GeometryError);
}

TEST(VideoIo, RgbWhiteAndBlack) {
  auto white = yuv420_to_rgb444(t::constant_frame(4, 4, 235));
  auto black = yuv420_to_rgb444(t::constant_frame(4, 4, 16));
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      EXPECT_EQ(white.r.at(x, y), 255);
      EXPECT_EQ(white.g.at(x, y), 255);
      EXPECT_EQ(white.b.at(x, y), 255);
      EXPECT_EQ(black.r.at(x, y), 0);
      EXPECT_EQ(black.g.at(x, y), 0);
      EXPECT_EQ(black.b.at(x, y), 0);
    }
}

TEST(VideoIo, RgbHandEvaluatedPixel) {
  // Y=128, Cb=90, Cr=200 through the limited-range 709 matrix:
  // R = 1.164383*112 + 1.792741*72  = 259.49 -> 255
  // G = 1.164383*112 - 0.213249*(-38) - 0.532909*72 = 100.14 -> 100
  // B = 1.164383*112 + 2.112402*(-38) = 50.14 -> 50
  auto rgb = yuv420_to_rgb444(t::constant_frame(2, 2, 128, 90, 200));
  EXPECT_EQ(rgb.r.at(0, 0), 255);
  EXPECT_EQ(rgb.g.at(0, 0), 100);
  EXPECT_EQ(rgb.b.at(0, 0), 50);
}

TEST(VideoIo, NeutralChromaGivesGray) {
  auto f = Yuv420Frame(t::random_plane(16, 16, 3), PlaneBuffer::filled(8, 8, 128),
                       PlaneBuffer::filled(8, 8, 128));
  auto rgb = yuv420_to_rgb444(f);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) {
      EXPECT_EQ(rgb.r.at(x, y), rgb.g.at(x, y));
      EXPECT_EQ(rgb.g.at(x, y), rgb.b.at(x, y));
    }
}

TEST(VideoIo, DegradeChromaExamples) {
  auto f = t::texture_frame(32, 32, 4);
  EXPECT_EQ(degrade_chroma(f, 1), f);

  auto flat = degrade_chroma(f, 256);
  EXPECT_EQ(flat.y(), f.y());
  for (auto v : flat.cb().samples()) EXPECT_EQ(v, 128);
  for (auto v : flat.cr().samples()) EXPECT_EQ(v, 128);

  auto one = degrade_chroma(t::constant_frame(2, 2, 50, 100, 100), 16);
  EXPECT_EQ(one.cb().at(0, 0), 96);
  EXPECT_EQ(one.cr().at(0, 0), 96);
  EXPECT_EQ(one.y().at(0, 0), 50);

  EXPECT_THROW(degrade_chroma(f, 0), DomainError);
}

TEST(VideoIo, DegradeChromaIdempotent) {
  auto f = t::texture_frame(32, 32, 8);
  for (int step : {2, 3, 4, 7, 16, 64, 100, 256}) {
    auto once = degrade_chroma(f, step);
    EXPECT_EQ(degrade_chroma(once, step), once) << step;
  }
}

TEST(VideoIo, DegradeLumaLeavesChroma) {
  auto f = t::texture_frame(32, 32, 8);
  auto d = degrade_luma(f, 8);
  EXPECT_EQ(d.cb(), f.cb());
  EXPECT_EQ(d.cr(), f.cr());
  EXPECT_FALSE(d.y() == f.y());
}

TEST(VideoIo, PlaneCopiesShareStorage) {
  auto p = t::random_plane(8, 8, 1);
  auto q = p;
  EXPECT_EQ(p.samples().data(), q.samples().data());
  EXPECT_THROW(PlaneBuffer(4, 4, std::vector<std::uint8_t>(15)), GeometryError);
}
