// Copyright 2026 The sasg Authors. All rights reserved.
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

#ifndef SASG_CLI_CSV_HPP
#define SASG_CLI_CSV_HPP

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sasg::csv {

// 17 significant digits: every double survives a text round trip.
inline std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string number(const std::optional<double>& v) {
  return v ? number(*v) : std::string();
}

inline std::string field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Writes '\n'-terminated rows with ',' separators. The stream must be opened
// in binary mode for byte-stable output.
class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) os_ << ',';
      os_ << field(cells[i]);
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

}  // namespace sasg::csv

#endif  // SASG_CLI_CSV_HPP
