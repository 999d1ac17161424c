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

#ifndef CACIS_GEOMETRY_HPP
#define CACIS_GEOMETRY_HPP

#include "error.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <string>
#include <vector>

namespace cacis
{
    // Integer lag or position in units of the Nyquist spacing
    using lag_t = std::int64_t;

    // Validated array pair. The N-element sub-array is the compressed one, its spacing is
    // m_tilde = M / p; the M-element sub-array keeps spacing N.
    class cacis_config
    {
    public:
        lag_t M() const noexcept { return M_; }
        lag_t N() const noexcept { return N_; }
        lag_t p() const noexcept { return p_; }
        lag_t m_tilde() const noexcept { return m_tilde_; }

        bool is_prototype() const noexcept { return p_ == 1; }
        bool is_nested() const noexcept { return p_ == M_; }

        // Largest lag realised by the union positions
        lag_t max_lag() const noexcept { return std::max(N_ * (M_ - 1), m_tilde_ * (N_ - 1)); }

        // One prototype co-prime period, MN Nyquist slots
        lag_t period() const noexcept { return M_ * N_; }

        // M + N - 1 distinct positions (the shared zeroth position is counted once)
        lag_t num_positions() const noexcept { return M_ + N_ - 1; }

        friend bool operator==(const cacis_config &, const cacis_config &) = default;

        friend cacis_config make_config(lag_t M, lag_t N, lag_t p);

    private:
        cacis_config(lag_t M, lag_t N, lag_t p) : M_(M), N_(N), p_(p), m_tilde_(M / p) {}

        lag_t M_, N_, p_, m_tilde_;
    };

    namespace detail
    {
        inline void validate_pair(lag_t M, lag_t N)
        {
            if (M < 2 || N < 2)
                throw error(error_kind::degenerate_config,
                            "M and N must both be at least 2 (got M=" + std::to_string(M) + ", N=" + std::to_string(N) + ")");
            if (std::gcd(M, N) != 1)
                throw error(error_kind::not_coprime,
                            "M=" + std::to_string(M) + " and N=" + std::to_string(N) + " are not co-prime");
        }
    }

    inline cacis_config make_config(lag_t M, lag_t N, lag_t p)
    {
        detail::validate_pair(M, N);
        if (p < 1 || p > M || M % p != 0)
            throw error(error_kind::invalid_compression,
                        "compression factor p=" + std::to_string(p) + " must divide M=" + std::to_string(M));
        cacis_config cfg(M, N, p);
        if (std::gcd(cfg.m_tilde(), N) != 1)
            throw error(error_kind::not_coprime, "compressed spacing is not co-prime with N");
        return cfg;
    }

    // All admissible compression factors for (M, N), ascending. Always contains 1 and M.
    inline std::vector<lag_t> valid_compressions(lag_t M, lag_t N)
    {
        detail::validate_pair(M, N);
        std::vector<lag_t> out;
        for (lag_t p = 1; p <= M; ++p)
            if (M % p == 0)
                out.push_back(p);
        return out;
    }

    struct sampler_grid_t
    {
        std::vector<lag_t> positions_a;     // compressed sub-array, m_tilde * n
        std::vector<lag_t> positions_b;     // uncompressed sub-array, N * m
        std::vector<lag_t> union_positions; // sorted, position 0 appears once
    };

    inline sampler_grid_t sampler_grid(const cacis_config &cfg)
    {
        sampler_grid_t g;
        g.positions_a.reserve(static_cast<std::size_t>(cfg.N()));
        g.positions_b.reserve(static_cast<std::size_t>(cfg.M()));
        for (lag_t n = 0; n < cfg.N(); ++n)
            g.positions_a.push_back(cfg.m_tilde() * n);
        for (lag_t m = 0; m < cfg.M(); ++m)
            g.positions_b.push_back(cfg.N() * m);

        std::set_union(g.positions_a.begin(), g.positions_a.end(),
                       g.positions_b.begin(), g.positions_b.end(),
                       std::back_inserter(g.union_positions));
        return g;
    }
}

#endif
