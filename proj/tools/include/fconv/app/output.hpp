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

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fconv::app {

/// CSV table with a `#`-prefixed metadata header and trailing `# name: value`
/// scalar lines. Floats are written with 17 significant digits.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_scalar(const std::string& name, double value);
  void add_scalar(const std::string& name, const std::string& value);
  void set_metadata(std::string version, std::string resolved_config, std::uint64_t seed);

  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& scalars() const noexcept {
    return scalars_;
  }

  void write(std::ostream& os) const;
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
  std::vector<std::pair<std::string, std::string>> scalars_;
  std::string version_;
  std::string config_;
  std::uint64_t seed_ = 0;
};

[[nodiscard]] std::string format_double(double v);

inline constexpr const char* kConfigBegin = "# --- resolved config";
inline constexpr const char* kConfigEnd = "# --- end config";

/// The resolved-config YAML embedded in a table produced by write().
[[nodiscard]] std::string extract_config(const std::string& table_text);

}  // namespace fconv::app
