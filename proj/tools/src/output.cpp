// Copyright 2026 The fconv Authors
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

#include "fconv/app/output.hpp"

#include <fmt/format.h>

#include <sstream>
#include <stdexcept>

#include "fconv/errors.hpp"

namespace fconv::app {

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

OutputTable::OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void OutputTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) {
    throw InvalidArgument(fmt::format("row has {} values for {} columns", values.size(),
                                      columns_.size()));
  }
  std::string row;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) row += ',';
    row += format_double(values[k]);
  }
  rows_.push_back(std::move(row));
}

void OutputTable::add_scalar(const std::string& name, double value) {
  scalars_.emplace_back(name, format_double(value));
}

void OutputTable::add_scalar(const std::string& name, const std::string& value) {
  scalars_.emplace_back(name, value);
}

void OutputTable::set_metadata(std::string version, std::string resolved_config,
                               std::uint64_t seed) {
  version_ = std::move(version);
  config_ = std::move(resolved_config);
  seed_ = seed;
}

void OutputTable::write(std::ostream& os) const {
  os << "# fconv " << version_ << "\n";
  os << "# seed: " << seed_ << "\n";
  os << kConfigBegin << "\n";
  std::istringstream in(config_);
  for (std::string line; std::getline(in, line);) os << "# " << line << "\n";
  os << kConfigEnd << "\n";
  for (std::size_t k = 0; k < columns_.size(); ++k) os << (k ? "," : "") << columns_[k];
  os << "\n";
  for (const std::string& row : rows_) os << row << "\n";
  for (const auto& [name, value] : scalars_) os << "# " << name << ": " << value << "\n";
}

std::string OutputTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string extract_config(const std::string& table_text) {
  std::istringstream in(table_text);
  std::string out;
  bool inside = false;
  bool closed = false;
  for (std::string line; std::getline(in, line);) {
    if (line == kConfigBegin) {
      inside = true;
    } else if (line == kConfigEnd) {
      closed = inside;
      break;
    } else if (inside) {
      if (line.rfind("# ", 0) != 0) throw InvalidArgument("malformed config header line: " + line);
      out += line.substr(2) + "\n";
    }
  }
  if (!closed) throw InvalidArgument("table has no resolved-config header");
  return out;
}

}  // namespace fconv::app
