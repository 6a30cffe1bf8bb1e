#include "records.hpp"

#include <algorithm>
#include <fstream>

#include "skewsds/errors.hpp"

namespace skewsds::cli {

namespace {

int int_field(const nlohmann::ordered_json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number_integer()) {
    throw MalformedInput(std::string("record field '") + name + "' missing or not an integer");
  }
  return j[name].get<int>();
}

SubsetZv set_field(const nlohmann::ordered_json& j, const char* name, int v) {
  if (!j.contains(name) || !j[name].is_array()) {
    throw MalformedInput(std::string("record field '") + name + "' missing or not an array");
  }
  std::vector<int> elems;
  for (const auto& e : j[name]) {
    if (!e.is_number_integer()) throw MalformedInput(std::string("non-integer element in ") + name);
    const int x = e.get<int>();
    if (x < 0 || x >= v) {
      throw MalformedInput(std::string("element ") + std::to_string(x) + " of " + name +
                           " outside Z_" + std::to_string(v));
    }
    elems.push_back(x);
  }
  std::sort(elems.begin(), elems.end());
  if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
    throw MalformedInput(std::string("duplicate element in ") + name);
  }
  return SubsetZv(v, elems);
}

}  // namespace

nlohmann::ordered_json to_json(const SdsPair& pair) {
  return nlohmann::ordered_json{{"v", pair.params.v},         {"r", pair.params.r},
                                {"k", pair.params.k},         {"lambda", pair.params.lambda},
                                {"A", pair.a.elements()},     {"B", pair.b.elements()}};
}

SdsPair pair_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw MalformedInput("SDS record must be a JSON object");
  SdsParams p{int_field(j, "v"), int_field(j, "r"), int_field(j, "k"), int_field(j, "lambda")};
  if (p.v < 1 || p.v > kMaxModulus) {
    throw MalformedInput("v = " + std::to_string(p.v) + " outside [1, " + std::to_string(kMaxModulus) + "]");
  }
  auto a = set_field(j, "A", p.v);
  auto b = set_field(j, "B", p.v);
  if (a.size() != p.r || b.size() != p.k) {
    throw MalformedInput("record " + p.to_string() + " has |A| = " + std::to_string(a.size()) +
                         ", |B| = " + std::to_string(b.size()));
  }
  return SdsPair{p, std::move(a), std::move(b)};
}

std::vector<SdsPair> pairs_from_json(const nlohmann::ordered_json& j) {
  std::vector<SdsPair> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(pair_from_json(e));
  } else {
    out.push_back(pair_from_json(j));
  }
  return out;
}

nlohmann::ordered_json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path.string());
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw MalformedInput(path.string() + ": " + e.what());
  }
}

std::vector<SdsPair> load_table3(const std::filesystem::path& path) {
  if (!path.empty()) return pairs_from_json(read_json_file(path));
  return pairs_from_json(nlohmann::ordered_json::parse(embedded_table3_json()));
}

}  // namespace skewsds::cli
