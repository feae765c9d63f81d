// Copyright 2026 The Slotfill Authors
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

#ifndef SLOTFILL_ERRORS_HPP_
#define SLOTFILL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace slotfill {

// Malformed input file. Message carries "<origin>:<line>: <reason>".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& origin, long line, const std::string& reason)
      : std::runtime_error(origin + ":" + std::to_string(line) + ": " + reason) {}
  explicit ParseError(const std::string& reason) : std::runtime_error(reason) {}
};

// Semantically invalid schema set (duplicate names, type mismatches).
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& reason) : std::runtime_error(reason) {}
};

// Bad or incomplete pipeline configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& reason) : std::runtime_error(reason) {}
};

// A caller broke an operation's contract (e.g. an evaluate callback
// returning an out-of-range F1).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& reason) : std::logic_error(reason) {}
};

}  // namespace slotfill

#endif  // SLOTFILL_ERRORS_HPP_
