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

#include "stablefield/field_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace stablefield {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) {
      return cells;
    }
    start = comma + 1;
  }
}

double parse_double(std::string_view text, std::size_t line_number) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error("line " + std::to_string(line_number) + ": cannot parse number '" + std::string{text} +
                             "'");
  }
  return value;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x);
  return {buffer.data(), ptr};
}

void write_field_csv(std::ostream& out, const FieldSample& sample) {
  const std::size_t d = sample.grid.dim();
  if (sample.grid.size() != sample.values.size()) {
    throw std::invalid_argument("field sample grid and values differ in length");
  }
  for (std::size_t k = 0; k < d; ++k) {
    out << "x_" << (k + 1) << ',';
  }
  out << "value\n";
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    const auto x = sample.grid[i];
    for (std::size_t k = 0; k < d; ++k) {
      out << format_double(x[k]) << ',';
    }
    out << format_double(sample.values[i]) << '\n';
  }
}

void write_field_csv(const std::filesystem::path& path, const FieldSample& sample) {
  std::ofstream out{path, std::ios::binary};
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_field_csv(out, sample);
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

FieldSample read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty field CSV");
  }
  strip_cr(line);
  const auto header = split(line);
  if (header.size() < 2 || header.back() != "value") {
    throw std::runtime_error("field CSV header must be x_1,...,x_d,value");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (header[k] != "x_" + std::to_string(k + 1)) {
      throw std::runtime_error("unexpected field CSV column '" + std::string{header[k]} + "'");
    }
  }
  FieldSample sample;
  sample.grid = PointSet{d};
  std::vector<double> point(d);
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    strip_cr(line);
    if (line.empty()) {
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != d + 1) {
      throw std::runtime_error("line " + std::to_string(line_number) + ": expected " + std::to_string(d + 1) +
                               " columns");
    }
    for (std::size_t k = 0; k < d; ++k) {
      point[k] = parse_double(cells[k], line_number);
    }
    sample.grid.push_back(point);
    sample.values.push_back(parse_double(cells[d], line_number));
  }
  return sample;
}

FieldSample read_field_csv(const std::filesystem::path& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return read_field_csv(in);
}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
  return *this;
}

void CsvTable::write(std::ostream& out) const {
  const auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << cells[i];
    }
    out << '\n';
  };
  emit(header_);
  for (const auto& r : rows_) {
    emit(r);
  }
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out{path, std::ios::binary};
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write(out);
}

}  // namespace stablefield
