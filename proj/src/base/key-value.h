// src/base/key-value.h

// Copyright 2026  The lingstruct Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LINGSTRUCT_BASE_KEY_VALUE_H_
#define LINGSTRUCT_BASE_KEY_VALUE_H_

#include <sstream>
#include <string>
#include <vector>

#include "base/common.h"

namespace lingstruct {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Splits a flat "key = value" file. '#' starts a comment, blank lines are
/// skipped and surrounding double quotes are stripped from values.
std::vector<KeyValue> ParseKeyValues(const std::string &text);

/// Parses a whole value as T; throws naming the key otherwise.
template <typename T>
T ParseValue(const KeyValue &kv) {
  std::istringstream is(kv.value);
  T out;
  is >> out;
  if (!is || !(is >> std::ws).eof())
    throw Error("bad value '" + kv.value + "' for " + kv.key);
  return out;
}

/// Shortest text that reads back as the same double.
std::string FormatDouble(double v);

}  // namespace lingstruct

#endif  // LINGSTRUCT_BASE_KEY_VALUE_H_
