// Copyright 2026 The gmssc Authors
//
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
#include <vector>

#include "gmssc/core.hpp"
#include "json.hpp"

namespace gmssc {

// Instance documents are JSON with a fixed field order:
//   {"n": 8, "requests": [{"items": [3, 5], "k": 2}, ...]}
// Item lists are serialized in ascending order, so serialize(parse(x)) is
// stable and parse(serialize(inst)) == inst.

inline Instance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed instance document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("requests"))
    throw InvalidInput("instance document needs fields 'n' and 'requests'");
  if (!doc["n"].is_number_integer())
    throw InvalidInput("field 'n' must be an integer");
  const int n = doc["n"].get<int>();
  if (!doc["requests"].is_array())
    throw InvalidInput("field 'requests' must be an array");

  std::vector<Request> requests;
  requests.reserve(doc["requests"].size());
  std::size_t index = 0;
  for (const auto& entry : doc["requests"]) {
    ++index;
    const std::string where = "request " + std::to_string(index) + ": ";
    if (!entry.is_object() || !entry.contains("items") || !entry.contains("k"))
      throw InvalidInput(where + "needs fields 'items' and 'k'");
    if (!entry["items"].is_array())
      throw InvalidInput(where + "'items' must be an array of integers");
    std::vector<int> items;
    for (const auto& it : entry["items"]) {
      if (!it.is_number_integer())
        throw InvalidInput(where + "'items' must be an array of integers");
      items.push_back(it.get<int>());
    }
    if (!entry["k"].is_number_integer())
      throw InvalidInput(where + "'k' must be an integer");
    try {
      requests.emplace_back(std::move(items), entry["k"].get<int>());
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + e.what());
    }
  }
  try {
    return Instance(n, std::move(requests));
  } catch (const InvalidInput& e) {
    throw InvalidInput(e.what());  // already carries the request index
  }
}

inline std::string serialize_instance(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["n"] = inst.n;
  doc["requests"] = nlohmann::ordered_json::array();
  for (const Request& r : inst.requests) {
    nlohmann::ordered_json entry;
    entry["items"] = r.items;  // already sorted ascending
    entry["k"] = r.demand;
    doc["requests"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace gmssc
