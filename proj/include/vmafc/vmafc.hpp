#pragma once

#include "vmafc/adm.hpp"
#include "vmafc/descriptors.hpp"
#include "vmafc/errors.hpp"
#include "vmafc/eval.hpp"
#include "vmafc/fusion.hpp"
#include "vmafc/metrics_classic.hpp"
#include "vmafc/model_io.hpp"
#include "vmafc/rd_tools.hpp"
#include "vmafc/subjective.hpp"
#include "vmafc/video_io.hpp"
#include "vmafc/vif.hpp"
