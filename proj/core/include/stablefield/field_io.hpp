// Copyright 2026 The stablefield Authors
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

#ifndef STABLEFIELD_FIELD_IO_HPP
#define STABLEFIELD_FIELD_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stablefield/field.hpp"

namespace stablefield {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// CSV with header x_1,...,x_d,value and one row per grid point.
void write_field_csv(std::ostream& out, const FieldSample& sample);
void write_field_csv(const std::filesystem::path& path, const FieldSample& sample);

/// Inverse of write_field_csv. Throws std::runtime_error on malformed input.
FieldSample read_field_csv(std::istream& in);
FieldSample read_field_csv(const std::filesystem::path& path);

/// Minimal CSV table writer: a header and rows of already formatted cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_{std::move(header)} {}

  CsvTable& row(std::vector<std::string> cells);
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

  std::size_t rows() const noexcept { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace stablefield

#endif  // STABLEFIELD_FIELD_IO_HPP
