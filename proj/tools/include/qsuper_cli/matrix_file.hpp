// Copyright 2026 The qsuper Authors
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

#ifndef QSUPER_CLI_MATRIX_FILE_HPP_
#define QSUPER_CLI_MATRIX_FILE_HPP_

#include <string>

#include "qsuper/tensor.hpp"

namespace qsuper::cli {

// Malformed or unreadable input. Maps to exit code 2.
class FormatError : public Error {
 public:
  using Error::Error;
};

// JSON operator file:
//   {"version": 1,
//    "in_dims":  [["label", dim], ...],
//    "out_dims": [["label", dim], ...],
//    "data": [[re, im], ...]}        row-major, dim(out) rows by dim(in) cols
// Doubles are written in shortest round-trip form, so save/load is exact.
std::string to_matrix_json(const LinOp& op);
LinOp parse_matrix_json(const std::string& text);

LinOp read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const LinOp& op);

std::string read_text(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace qsuper::cli

#endif  // QSUPER_CLI_MATRIX_FILE_HPP_
