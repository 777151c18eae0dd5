#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "huppert/groupdata.hpp"
#include "json.hpp"

namespace test_support {

inline const huppert::Catalog& catalog() {
  static const huppert::Catalog cat = huppert::load_dataset("mathieu");
  return cat;
}

inline const huppert::DegreeSet& cd(const char* name) { return *huppert::profile(catalog(), name).degrees; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nlohmann::ordered_json dataset_json() { return nlohmann::ordered_json::parse(catalog().text()); }

inline nlohmann::ordered_json& group_json(nlohmann::ordered_json& doc, const std::string& name) {
  for (auto& g : doc["groups"]) {
    if (g["name"] == name) return g;
  }
  throw std::runtime_error("no group " + name);
}

}  // namespace test_support
