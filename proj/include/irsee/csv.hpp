// SPDX-License-Identifier: Apache-2.0
//
// irsee - energy-efficient IRS-assisted uplink simulation and DDPG control
// Copyright (C) 2026 The irsee Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <fmt/format.h>

#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsee
{

inline constexpr int kCsvSchemaVersion = 1;

// 17 significant digits round-trips every double.
inline std::string format_double(double v)
{
    return fmt::format("{:.17g}", v);
}

// Comma-separated writer. The metadata block is written first, each line
// prefixed with '#', followed by a single header row.
class CsvWriter
{
  public:
    CsvWriter(const std::string &path, const std::string &metadata) : out_(path, std::ios::binary)
    {
        if (!out_)
            throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
        size_t start = 0;
        while (start < metadata.size())
        {
            size_t end = metadata.find('\n', start);
            if (end == std::string::npos)
                end = metadata.size();
            out_ << "# " << metadata.substr(start, end - start) << '\n';
            start = end + 1;
        }
    }

    void header(std::initializer_list<std::string> cols) { row(std::vector<std::string>(cols)); }

    void row(const std::vector<std::string> &cells)
    {
        for (size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    void row(std::initializer_list<std::string> cells) { row(std::vector<std::string>(cells)); }

  private:
    std::ofstream out_;
};

} // namespace irsee
