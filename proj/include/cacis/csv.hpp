// SPDX-License-Identifier: Apache-2.0
//
// cacis - co-prime arrays with compressed inter-element spacing
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

#ifndef CACIS_CSV_HPP
#define CACIS_CSV_HPP

#include "error.hpp"

#include <charconv>
#include <complex>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

// Locale-independent CSV helpers. Numbers are written in the shortest form that round-trips.

namespace cacis::csv
{
    class io_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline std::string format(double v)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    inline std::string format(long long v)
    {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    inline std::string format(long v) { return format(static_cast<long long>(v)); }
    inline std::string format(int v) { return format(static_cast<long long>(v)); }

    inline bool parse_double(std::string_view s, double &out)
    {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        if (s.empty())
            return false;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
        return res.ec == std::errc{} && res.ptr == s.data() + s.size();
    }

    // Splits on commas; no quoting (none of our files need it)
    inline std::vector<std::string_view> split(std::string_view line, char sep = ',')
    {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true)
        {
            const auto pos = line.find(sep, start);
            if (pos == std::string_view::npos)
            {
                parts.push_back(line.substr(start));
                break;
            }
            parts.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        return parts;
    }

    struct table
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;
    };

    inline void write(const std::string &path, const table &t)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw io_error("cannot open " + path + " for writing");
        auto emit = [&](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                if (i)
                    f << ',';
                f << cells[i];
            }
            f << '\n';
        };
        emit(t.header);
        for (const auto &row : t.rows)
            emit(row);
        if (!f)
            throw io_error("failed writing " + path);
    }

    // Two columns (real, imag), one sample per row. A non-numeric first line is taken as a header.
    inline std::vector<std::complex<double>> read_complex_samples(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw io_error("cannot open " + path);

        std::vector<std::complex<double>> out;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(f, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos)
                continue;
            const auto cells = split(line);
            double re = 0.0, im = 0.0;
            const bool ok = cells.size() == 2 && parse_double(cells[0], re) && parse_double(cells[1], im);
            if (!ok)
            {
                if (line_no == 1 && out.empty())
                    continue;
                throw error(error_kind::invalid_argument,
                            path + ":" + std::to_string(line_no) + ": expected two numeric columns (real,imag)");
            }
            out.emplace_back(re, im);
        }
        return out;
    }
}

#endif
