// Copyright 2026 The curvegate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace curvegate::io {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

/// Reads a numeric CSV with a header row. Errors carry "path:line:" prefixes.
CsvData read_numeric_csv(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::string& path);

/// Lower-case file extension including the dot, or "".
std::string extension(const std::string& path);

}  // namespace curvegate::io
