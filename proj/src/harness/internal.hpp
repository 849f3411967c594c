#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rrg/harness.hpp"

namespace rrg::harness::detail {

std::string cell_dir_name(const Cell& c);

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

/// Rows of a comma-separated file, header row dropped.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace rrg::harness::detail
