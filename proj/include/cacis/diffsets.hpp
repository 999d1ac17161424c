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

#ifndef CACIS_DIFFSETS_HPP
#define CACIS_DIFFSETS_HPP

#include "geometry.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

// Self and cross difference sets of a CACIS configuration.
//
// Notation used in member names:
//   self_mtilde : lags m_tilde * n   (compressed sub-array with itself)
//   self_n      : lags N * m         (uncompressed sub-array with itself)
//   cross       : lags m_tilde * n - N * m, the "plus" set; "minus" is its mirror image
//   paired      : cross lags with n in [1, N-1], m in [1, m_tilde-1]; these come in +/- pairs
//   unpaired    : cross lags with n in [1, N-1], m in [m_tilde+1, M-1]; no mirror inside the plus set
//
// Every signed set keeps the (n, m) indices that generated each lag.

namespace cacis
{
    enum class lag_source
    {
        self_mtilde_plus,
        self_mtilde_minus,
        self_n_plus,
        self_n_minus,
        cross_plus,
        cross_minus
    };

    struct labeled_lag
    {
        lag_t lag;
        lag_source source;
        lag_t n; // index into the compressed sub-array (0 for self_n sets)
        lag_t m; // index into the uncompressed sub-array (0 for self_mtilde sets)

        friend bool operator==(const labeled_lag &, const labeled_lag &) = default;
    };

    using lag_set = std::set<lag_t>;

    inline lag_set distinct(const std::vector<labeled_lag> &labeled)
    {
        lag_set out;
        for (const auto &l : labeled)
            out.insert(l.lag);
        return out;
    }

    struct self_differences_t
    {
        std::vector<labeled_lag> mtilde_plus, mtilde_minus, n_plus, n_minus;
        lag_set all; // union of the four
    };

    inline self_differences_t self_differences(const cacis_config &cfg)
    {
        self_differences_t s;
        for (lag_t n = 0; n < cfg.N(); ++n)
        {
            s.mtilde_plus.push_back({cfg.m_tilde() * n, lag_source::self_mtilde_plus, n, 0});
            s.mtilde_minus.push_back({-cfg.m_tilde() * n, lag_source::self_mtilde_minus, n, 0});
        }
        for (lag_t m = 0; m < cfg.M(); ++m)
        {
            s.n_plus.push_back({cfg.N() * m, lag_source::self_n_plus, 0, m});
            s.n_minus.push_back({-cfg.N() * m, lag_source::self_n_minus, 0, m});
        }
        for (const auto *set : {&s.mtilde_plus, &s.mtilde_minus, &s.n_plus, &s.n_minus})
            for (const auto &l : *set)
                s.all.insert(l.lag);
        return s;
    }

    struct cross_differences_t
    {
        std::vector<labeled_lag> plus;  // m_tilde*n - N*m, all MN index pairs
        std::vector<labeled_lag> minus; // N*m - m_tilde*n
    };

    inline cross_differences_t cross_differences(const cacis_config &cfg)
    {
        cross_differences_t c;
        const auto count = static_cast<std::size_t>(cfg.M() * cfg.N());
        c.plus.reserve(count);
        c.minus.reserve(count);
        for (lag_t n = 0; n < cfg.N(); ++n)
            for (lag_t m = 0; m < cfg.M(); ++m)
            {
                const lag_t l = cfg.m_tilde() * n - cfg.N() * m;
                c.plus.push_back({l, lag_source::cross_plus, n, m});
                c.minus.push_back({-l, lag_source::cross_minus, n, m});
            }
        return c;
    }

    struct difference_partition
    {
        std::vector<labeled_lag> paired_plus, paired_minus;
        std::vector<labeled_lag> unpaired_plus, unpaired_minus;

        lag_set paired;   // paired_plus U paired_minus
        lag_set unpaired; // unpaired_plus U unpaired_minus
        lag_set self;     // all self differences
        lag_set cross;    // distinct(cross plus U cross minus), the full coarray
    };

    // Empty index ranges (m_tilde = 1 for the paired sets, p = 1 for the unpaired sets) give empty sets.
    inline difference_partition partition(const cacis_config &cfg)
    {
        difference_partition part;
        const lag_t Mt = cfg.m_tilde(), N = cfg.N(), M = cfg.M();

        for (lag_t n = 1; n <= N - 1; ++n)
        {
            for (lag_t m = 1; m <= Mt - 1; ++m)
            {
                const lag_t l = Mt * n - N * m;
                part.paired_plus.push_back({l, lag_source::cross_plus, n, m});
                part.paired_minus.push_back({-l, lag_source::cross_minus, n, m});
            }
            for (lag_t m = Mt + 1; m <= M - 1; ++m)
            {
                const lag_t l = Mt * n - N * m;
                part.unpaired_plus.push_back({l, lag_source::cross_plus, n, m});
                part.unpaired_minus.push_back({-l, lag_source::cross_minus, n, m});
            }
        }

        for (const auto *set : {&part.paired_plus, &part.paired_minus})
            for (const auto &l : *set)
                part.paired.insert(l.lag);
        for (const auto *set : {&part.unpaired_plus, &part.unpaired_minus})
            for (const auto &l : *set)
                part.unpaired.insert(l.lag);

        part.self = self_differences(cfg).all;

        const auto cross = cross_differences(cfg);
        for (const auto &l : cross.plus)
            part.cross.insert(l.lag);
        for (const auto &l : cross.minus)
            part.cross.insert(l.lag);
        return part;
    }

    // Number of distinct lags in the coarray, closed form.
    //   2(M+N-1) - 1                        self differences
    // + (m_tilde-1)(N-1)                    paired cross lags, absent when p = M
    // + 2(N-1)(M-m_tilde-1)                 unpaired cross lags, absent when p = 1
    inline lag_t dof(const cacis_config &cfg)
    {
        const lag_t M = cfg.M(), N = cfg.N(), p = cfg.p(), Mt = cfg.m_tilde();
        // ceil((M-p)/M) and ceil((p-1)/M) are 0/1 switches for p in [1, M]
        const lag_t has_paired = (M - p + M - 1) / M;
        const lag_t has_unpaired = (p - 1 + M - 1) / M;
        return 2 * (M + N - 1) - 1 + has_paired * (Mt - 1) * (N - 1) + has_unpaired * 2 * (N - 1) * (M - Mt - 1);
    }

    // Extremes of the coarray. Symmetric; the larger of the two sub-array apertures.
    inline std::pair<lag_t, lag_t> lag_range(const cacis_config &cfg)
    {
        return {-cfg.max_lag(), cfg.max_lag()};
    }

    // Every lag realised by an ordered pair of union positions, with its pair count.
    // Independent of the partition machinery above.
    inline std::map<lag_t, lag_t> brute_force_difference_oracle(const cacis_config &cfg)
    {
        const auto positions = sampler_grid(cfg).union_positions;
        std::map<lag_t, lag_t> counts;
        for (const lag_t u : positions)
            for (const lag_t v : positions)
                ++counts[u - v];
        return counts;
    }

    namespace detail
    {
        inline lag_t smallest_missing_positive(const std::map<lag_t, lag_t> &counts)
        {
            lag_t h = 1;
            while (counts.contains(h))
                ++h;
            return h;
        }
    }

    // Smallest positive lag missing from the coarray. For 2 <= p <= M this is MN - m_tilde(N-1);
    // the prototype case p = 1 is found by enumeration.
    inline lag_t first_hole(const cacis_config &cfg)
    {
        const auto counts = brute_force_difference_oracle(cfg);
        const lag_t enumerated = detail::smallest_missing_positive(counts);
        if (cfg.is_prototype())
            return enumerated;

        const lag_t hole = cfg.M() * cfg.N() - cfg.m_tilde() * (cfg.N() - 1);
        if (hole != enumerated)
            throw std::logic_error("first hole formula disagrees with enumeration");
        return hole;
    }
}

#endif
