#pragma once

#include <string>

#include "json.hpp"
#include "lsl/lca.hpp"
#include "lsl/sft.hpp"

namespace lsl {

// JSON shapes (all scalar values travel as strings, all group elements as
// integer arrays):
//   field    {"kind":"Fp","p":5} | {"kind":"Q"}
//   group    {"kind":"Zd","d":2} | {"kind":"free","rank":2} | {"kind":"cyclic","orders":[2,3]}
//   automaton {"field":..,"group":..,"dim":d,"matrix":[[[{"g":[..],"c":".."},..],..],..]}
//   subshift {"field":..,"group":..,"dim":d,"D":[[..],..],"W_basis":[["..",..],..]}
//   config   {"cells":[{"g":[..],"v":["..",..]},..]}
//   window data {"window":[[..],..],"values":["..",..]}

nlohmann::json field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);

nlohmann::json group_to_json(const GroupSpec& s);
GroupSpec group_from_json(const nlohmann::json& j);

nlohmann::json element_to_json(const GroupElement& g);
GroupElement element_from_json(const GroupSpec& s, const nlohmann::json& j);

nlohmann::json subset_to_json(const FiniteSubset& e);
FiniteSubset subset_from_json(const GroupSpec& s, const nlohmann::json& j);

nlohmann::json ca_to_json(const LinearCA& t);
LinearCA ca_from_json(const nlohmann::json& j);

nlohmann::json sft_to_json(const LinearSFT& s);
LinearSFT sft_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const FiniteConfig& x);
FiniteConfig config_from_json(const Field& f, const GroupSpec& s, int dim,
                              const nlohmann::json& j);

nlohmann::json window_data_to_json(const WindowData& w);
WindowData window_data_from_json(const Field& f, const GroupSpec& s, int dim,
                                 const nlohmann::json& j);

nlohmann::json subspace_to_json(const WindowSubspace& v);

// Strict parsing wrappers; malformed input surfaces as ParseError with the
// underlying position message, missing files as IoError.
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json load_json_file(const std::string& path);

}  // namespace lsl
