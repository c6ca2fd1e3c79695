#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "vmafc/fusion.hpp"

namespace vmafc {

std::string model_to_json(const SvrModel& model);
SvrModel model_from_json(const std::string& text);

void save_model(const SvrModel& model, const std::filesystem::path& path);
SvrModel load_model(const std::filesystem::path& path);

/// content_id, <feature columns...>, mos. Extra trailing columns are ignored.
TrainingSet read_training_csv(std::istream& in);
TrainingSet read_training_csv(const std::filesystem::path& path);
void write_training_csv(std::ostream& out, const TrainingSet& data);

}  // namespace vmafc
