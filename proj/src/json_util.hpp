// Copyright 2026 The DTT Scheduler Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "dtt/types.hpp"

namespace dtt::detail {

using ojson = nlohmann::ordered_json;

/// Location prefix for schema error messages, e.g. "wires[3]".
class JsonPath {
 public:
  explicit JsonPath(std::string prefix) : prefix_(std::move(prefix)) {}
  std::string str() const { return prefix_.empty() ? "document" : prefix_; }
  std::string field(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

 private:
  std::string prefix_;
};

/// Parses JSON text; syntax errors become ParseError with line/column.
inline ojson parse_document(std::string_view text, std::string_view what) {
  try {
    return ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": syntax error: " + e.what());
  }
}

inline const ojson& require_field(const ojson& j, std::string_view key, const JsonPath& at) {
  if (!j.is_object()) throw ParseError(at.str() + ": expected an object");
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(at.field(key) + ": missing");
  return *it;
}

inline const ojson& require_array(const ojson& j, std::string_view key, const JsonPath& at) {
  const auto& v = require_field(j, key, at);
  if (!v.is_array()) throw ParseError(at.field(key) + ": expected an array");
  return v;
}

template <typename T>
T require(const ojson& j, std::string_view key, const JsonPath& at) {
  const auto& v = require_field(j, key, at);
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ParseError(at.field(key) + ": expected a string");
  } else {
    if (!v.is_number_integer()) throw ParseError(at.field(key) + ": expected an integer");
  }
  return v.get<T>();
}

template <typename T>
T optional_field(const ojson& j, std::string_view key, const JsonPath& at, T fallback) {
  if (!j.contains(std::string(key))) return fallback;
  return require<T>(j, key, at);
}

inline std::vector<DatumId> require_ids(const ojson& j, std::string_view key,
                                        const JsonPath& at) {
  std::vector<DatumId> out;
  for (const auto& v : require_array(j, key, at)) {
    if (!v.is_number_integer() || v.get<DatumId>() < 0) {
      throw ParseError(at.field(key) + ": expected non-negative integer datum ids");
    }
    out.push_back(v.get<DatumId>());
  }
  return out;
}

}  // namespace dtt::detail
