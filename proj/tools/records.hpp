#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "skewsds/sds.hpp"

namespace skewsds::cli {

// {"v":int,"r":int,"k":int,"lambda":int,"A":[int...],"B":[int...]}, arrays ascending.
nlohmann::ordered_json to_json(const SdsPair& pair);

// Throws MalformedInput on missing fields, out-of-range elements, duplicates
// or sizes that disagree with r and k.
SdsPair pair_from_json(const nlohmann::ordered_json& j);

// A single record object or an array of them.
std::vector<SdsPair> pairs_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json read_json_file(const std::filesystem::path& path);

std::string_view embedded_table3_json();

// Fixture records from `path`, or the embedded copy when path is empty.
std::vector<SdsPair> load_table3(const std::filesystem::path& path = {});

}  // namespace skewsds::cli
