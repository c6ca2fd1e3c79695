#pragma once

#include <vector>

#include "vmafc/plane.hpp"
#include "vmafc/video_io.hpp"

namespace vmafc {

struct ContentDescriptors {
  double si = 0.0;
  double ti = 0.0;
  double cf = 0.0;
};

/// Mean absolute luma difference to the previous frame; 0 for the first frame.
std::vector<double> motion_ti(const VideoSequence& seq);

/// Standard deviation of the Sobel gradient magnitude over interior pixels.
double spatial_information(const PlaneBuffer& luma);

/// Standard deviation of the pixel-wise difference `cur - prev`.
double temporal_information(const PlaneBuffer& prev, const PlaneBuffer& cur);

/// sqrt(var_rg + var_yb) + 0.3 * sqrt(mean_rg^2 + mean_yb^2)
double colorfulness(const RgbFrame& frame);

ContentDescriptors si_ti_cf(const VideoSequence& seq);

}  // namespace vmafc
