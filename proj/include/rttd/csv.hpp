// SPDX-License-Identifier: Apache-2.0
//
// rainbow-ttd: wideband true-time-delay array simulation and single-symbol
// beam-training toolkit
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

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rttd {

/// Fixed-format numeric cell so repeated runs emit byte-identical files.
inline std::string csv_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string csv_num(int v) { return std::to_string(v); }

/// Minimal CSV emitter: one header, fixed formatting, newline-terminated
/// rows.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header)
        : _out(path, std::ios::binary | std::ios::trunc),
          _columns(header.size())
    {
        if (!_out)
            throw std::runtime_error("cannot open output file: " + path);
        write_row(header);
    }

    void row(const std::vector<std::string>& cells) { write_row(cells); }

private:
    void write_row(const std::vector<std::string>& cells)
    {
        if (cells.size() != _columns)
            throw std::logic_error("CSV row width does not match the header");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                _out << ',';
            _out << cells[i];
        }
        _out << '\n';
    }

    std::ofstream _out;
    std::size_t _columns;
};

} // namespace rttd
