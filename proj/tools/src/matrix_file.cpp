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

#include "qsuper_cli/matrix_file.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qsuper::cli {
namespace {

using nlohmann::json;

json dims_json(const SystemDims& s) {
  json a = json::array();
  for (const auto& f : s.factors()) a.push_back(json::array({f.label, f.dim}));
  return a;
}

SystemDims parse_dims(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw FormatError(std::string("missing array '") + key + "'");
  }
  std::vector<Factor> fs;
  for (const auto& e : j[key]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer()) {
      throw FormatError(std::string("'") + key + "' entries must be [label, dim]");
    }
    const auto d = e[1].get<std::int64_t>();
    if (d < 1) throw FormatError(std::string("'") + key + "' has a non-positive dimension");
    fs.push_back({e[0].get<std::string>(), static_cast<Index>(d)});
  }
  try {
    return SystemDims(std::move(fs));
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

std::string to_matrix_json(const LinOp& op) {
  json data = json::array();
  const Matrix& m = op.data();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  }
  json j;
  j["version"] = 1;
  j["in_dims"] = dims_json(op.in());
  j["out_dims"] = dims_json(op.out());
  j["data"] = std::move(data);
  return j.dump() + "\n";
}

LinOp parse_matrix_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("top level must be an object");
  if (!j.contains("version") || j["version"] != 1) throw FormatError("unsupported version");
  const SystemDims in = parse_dims(j, "in_dims"), out = parse_dims(j, "out_dims");
  if (!j.contains("data") || !j["data"].is_array()) throw FormatError("missing array 'data'");
  const json& data = j["data"];
  const Index rows = out.total_dim(), cols = in.total_dim();
  if (static_cast<Index>(data.size()) != rows * cols) {
    throw FormatError("data has " + std::to_string(data.size()) + " entries, expected " +
                      std::to_string(rows * cols));
  }
  Matrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const json& e = data[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("data entry " + std::to_string(k) + " is not [re, im]");
    }
    const double re = e[0].get<double>(), im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw FormatError("data entry " + std::to_string(k) + " is not finite");
    }
    m(k / cols, k % cols) = Complex(re, im);
  }
  return LinOp(in, out, std::move(m));
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

LinOp read_matrix_file(const std::string& path) { return parse_matrix_json(read_text(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write '" + path + "'");
  f << text;
  if (!f) throw FormatError("write to '" + path + "' failed");
}

void write_matrix_file(const std::string& path, const LinOp& op) {
  write_text_file(path, to_matrix_json(op));
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qsuper::cli
