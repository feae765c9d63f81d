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

#ifndef SLOTFILL_STRINGS_HPP_
#define SLOTFILL_STRINGS_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace slotfill {

// Splits on a single delimiter character; keeps empty fields.
std::vector<std::string> split(std::string_view text, char delim);

// Splits on runs of ASCII whitespace; drops empty fields.
std::vector<std::string> split_ws(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// ASCII-only lowercasing; bytes >= 0x80 pass through untouched.
std::string ascii_lower(std::string_view text);

// Shortest decimal representation that round-trips through a double.
std::string fmt_double(double value);

// Fixed-point formatting, e.g. fmt_fixed(0.5, 4) == "0.5000".
std::string fmt_fixed(double value, int digits);

// Strict double parse of the whole field; returns false on trailing junk.
bool parse_double(std::string_view text, double* out);
bool parse_long(std::string_view text, long* out);

}  // namespace slotfill

#endif  // SLOTFILL_STRINGS_HPP_
