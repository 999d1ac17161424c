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

#ifndef CACIS_ERROR_HPP
#define CACIS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cacis
{
    enum class error_kind
    {
        not_coprime,
        invalid_compression,
        degenerate_config,
        unsupported_compression,
        grid_too_coarse,
        insufficient_signal,
        invalid_argument
    };

    // Stable identifier used in machine-readable error reports
    constexpr std::string_view error_name(error_kind kind) noexcept
    {
        switch (kind)
        {
        case error_kind::not_coprime:
            return "NotCoprime";
        case error_kind::invalid_compression:
            return "InvalidCompression";
        case error_kind::degenerate_config:
            return "DegenerateConfig";
        case error_kind::unsupported_compression:
            return "UnsupportedCompression";
        case error_kind::grid_too_coarse:
            return "GridTooCoarse";
        case error_kind::insufficient_signal:
            return "InsufficientSignal";
        case error_kind::invalid_argument:
            return "InvalidArgument";
        }
        return "Unknown";
    }

    // Validation failure raised by any module. Internal invariant violations use std::logic_error instead.
    class error : public std::runtime_error
    {
    public:
        error(error_kind kind, const std::string &message)
            : std::runtime_error(message), kind_(kind) {}

        error_kind kind() const noexcept { return kind_; }
        std::string_view name() const noexcept { return error_name(kind_); }

    private:
        error_kind kind_;
    };
}

#endif
