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

#ifndef CACIS_WEIGHTS_HPP
#define CACIS_WEIGHTS_HPP

#include "diffsets.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cacis
{
    // Weight function z(l): number of ordered sample pairs contributing to lag l, for
    // l in [-span, span]. Holes hold 0.
    class lag_table
    {
    public:
        lag_table() = default;
        explicit lag_table(lag_t span)
            : span_(span), weights_(static_cast<std::size_t>(2 * span + 1), 0) {}

        lag_t span() const noexcept { return span_; }
        bool in_range(lag_t l) const noexcept { return l >= -span_ && l <= span_; }

        lag_t at(lag_t l) const
        {
            if (!in_range(l))
                return 0;
            return weights_[index(l)];
        }
        lag_t operator[](lag_t l) const { return at(l); }

        lag_t &ref(lag_t l)
        {
            if (!in_range(l))
                throw std::out_of_range("lag outside table span");
            return weights_[index(l)];
        }

        void add(lag_t l, lag_t count) { ref(l) += count; }

        // Storage order: lag -span first
        const std::vector<lag_t> &weights() const noexcept { return weights_; }

        lag_t total() const { return std::accumulate(weights_.begin(), weights_.end(), lag_t{0}); }

        lag_t nonzero_count() const
        {
            lag_t c = 0;
            for (const auto w : weights_)
                c += (w != 0);
            return c;
        }

        friend bool operator==(const lag_table &, const lag_table &) = default;

    private:
        std::size_t index(lag_t l) const noexcept { return static_cast<std::size_t>(l + span_); }

        lag_t span_ = 0;
        std::vector<lag_t> weights_;
    };

    // Contributor counts assembled set by set:
    //   z(+-m_tilde*i) = (N - i) + [p > 1]   i in [1, N-1]
    //   z(+-N*i)       = M - i               i in [1, M-1]
    //   z(0)           = M + N - 1
    //   z(l)           = 2 on the paired cross lags
    //   z(l)           = 1 on the unpaired cross lags (and their mirrors)
    // The [p > 1] term is the extra cross pair at m = m_tilde which lands on -m_tilde*(N-n).
    inline lag_table weight_closed_form(const cacis_config &cfg)
    {
        const lag_t M = cfg.M(), N = cfg.N(), Mt = cfg.m_tilde();
        const lag_t compressed = cfg.is_prototype() ? 0 : 1;

        lag_table z(cfg.max_lag());
        z.add(0, M + N - 1);
        for (lag_t i = 1; i <= N - 1; ++i)
        {
            z.add(Mt * i, N - i + compressed);
            z.add(-Mt * i, N - i + compressed);
        }
        for (lag_t i = 1; i <= M - 1; ++i)
        {
            z.add(N * i, M - i);
            z.add(-N * i, M - i);
        }

        // Each paired lag is generated once by the plus set and once by the minus set.
        for (lag_t n = 1; n <= N - 1; ++n)
            for (lag_t m = 1; m <= Mt - 1; ++m)
                z.add(Mt * n - N * m, 2);

        for (lag_t n = 1; n <= N - 1; ++n)
            for (lag_t m = Mt + 1; m <= M - 1; ++m)
            {
                const lag_t l = N * m - Mt * n;
                z.add(l, 1);
                z.add(-l, 1);
            }
        return z;
    }

    // Counts ordered pairs (u, v) of union positions with u - v = l.
    inline lag_table weight_brute_force(const cacis_config &cfg)
    {
        const auto positions = sampler_grid(cfg).union_positions;
        lag_table z(cfg.max_lag());
        for (const lag_t u : positions)
            for (const lag_t v : positions)
                z.add(u - v, 1);
        return z;
    }
}

#endif
