#pragma once

#include <string>

#include "json.hpp"

#include "axenum/axiom.hpp"
#include "axenum/partial_function.hpp"
#include "axenum/set_description.hpp"

// JSON encodings shared by fixture files, trace files, and the CLI.
// Partial functions travel as sorted [position, bit] pairs, set descriptions
// as per-column records.

namespace axenum {

using json = nlohmann::json;

inline json to_json(const FinitePartialFunction& f) {
  json out = json::array();
  for (const auto& [pos, bit] : f.entries())
    out.push_back(json::array({pos, static_cast<int>(bit)}));
  return out;
}

inline FinitePartialFunction function_from_json(const json& j) {
  FinitePartialFunction out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("partial function entries must be [position, bit]");
    nat pos = e.at(0).get<nat>();
    int bit = e.at(1).get<int>();
    if (bit != 0 && bit != 1)
      throw std::invalid_argument("partial function bits must be 0 or 1");
    if (out.defined(pos))
      throw std::invalid_argument("partial function repeats a position");
    out.define(pos, bit != 0);
  }
  return out;
}

inline json to_json(const SetDescription& s) {
  json cols = json::array();
  for (const auto& [col, desc] : s.columns()) {
    json c;
    c["column"] = col;
    c["default"] = desc.default_bit ? 1 : 0;
    c["exceptions"] = desc.exceptions;
    cols.push_back(std::move(c));
  }
  return json{{"columns", std::move(cols)}};
}

inline SetDescription set_from_json(const json& j) {
  SetDescription out;
  for (const auto& c : j.at("columns")) {
    ColumnDescription desc;
    desc.default_bit = c.at("default").get<int>() != 0;
    for (const auto& row : c.at("exceptions")) desc.exceptions.insert(row.get<nat>());
    out.set_column(c.at("column").get<nat>(), std::move(desc));
  }
  return out;
}

inline json to_json(const Axiom& a) {
  return json{{"l", a.level}, {"sigma", to_json(a.condition)}, {"y", a.target}};
}

inline Axiom axiom_from_json(const json& j) {
  return Axiom{j.at("l").get<nat>(), function_from_json(j.at("sigma")),
               j.at("y").get<nat>()};
}

}  // namespace axenum
