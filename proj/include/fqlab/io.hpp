#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "fqlab/bounds.hpp"
#include "fqlab/error.hpp"
#include "fqlab/field.hpp"
#include "fqlab/pointset.hpp"

namespace fqlab {

using Json = nlohmann::ordered_json;

// Point-set file format:
//   {"p": 5, "k": 1, "modulus": null, "d": 2, "points": [0, 7, 14, 21, 3]}
// with point indices in the documented little-endian base-q encoding and
// modulus an array of k+1 coefficients when k > 1.

inline Json pointset_to_json(const Field& f, const PointSet& e) {
  Json j;
  j["p"] = f.p();
  j["k"] = f.k();
  if (f.k() == 1)
    j["modulus"] = nullptr;
  else
    j["modulus"] = f.modulus();
  j["d"] = e.d();
  j["points"] = e.members();
  return j;
}

inline std::pair<Field, PointSet> pointset_from_json(const Json& j) {
  try {
    const uint32_t p = j.at("p").get<uint32_t>();
    const uint32_t k = j.at("k").get<uint32_t>();
    std::optional<std::vector<uint32_t>> modulus;
    if (!j.at("modulus").is_null())
      modulus = j.at("modulus").get<std::vector<uint32_t>>();
    const uint32_t d = j.at("d").get<uint32_t>();
    Field f(p, k, std::move(modulus));
    PointSet e(f, d);
    for (const auto& idx : j.at("points")) e.insert(idx.get<uint64_t>());
    return {std::move(f), std::move(e)};
  } catch (const Json::exception& ex) {
    fail(ErrorCode::ParseError, ex.what());
  }
}

inline Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    fail(ErrorCode::ParseError, path.string() + ": " + ex.what());
  }
}

inline std::pair<Field, PointSet> load_pointset(
    const std::filesystem::path& path) {
  return pointset_from_json(load_json_file(path));
}

// Writes via a temp file in the same directory plus rename, so interrupted
// runs never leave a truncated file behind.
inline void write_text_atomic(const std::filesystem::path& path,
                              const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(ErrorCode::ConfigError, "cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

inline void write_json_atomic(const std::filesystem::path& path,
                              const Json& j, int indent = 1) {
  write_text_atomic(path, j.dump(indent) + "\n");
}

inline Json bound_report_to_json(const BoundReport& r) {
  Json j;
  j["theorem"] = std::string(theorem_name(r.theorem));
  j["hypotheses_met"] = r.hypotheses_met;
  j["hypothesis_detail"] = r.hypothesis_detail;
  j["bound_value"] = r.bound_value;
  j["measured"] = r.measured;
  j["pass"] = r.pass;
  return j;
}

}  // namespace fqlab
