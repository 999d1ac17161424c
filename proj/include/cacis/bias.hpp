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

#ifndef CACIS_BIAS_HPP
#define CACIS_BIAS_HPP

#include "weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace cacis
{
    // Uniform frequency grid over [-pi, pi): omega_k = -pi + 2 pi k / grid_size.
    // Shared by the bias windows and the correlogram.
    inline double omega_at(std::size_t k, std::size_t grid_size)
    {
        const double G = static_cast<double>(grid_size);
        return std::numbers::pi * ((2.0 * static_cast<double>(k) - G) / G);
    }

    inline std::vector<double> omega_grid(std::size_t grid_size)
    {
        std::vector<double> w(grid_size);
        for (std::size_t k = 0; k < grid_size; ++k)
            w[k] = omega_at(k, grid_size);
        return w;
    }

    // Grid index closest to a frequency in [-pi, pi], wrapping at the ends
    inline std::size_t nearest_bin(double omega, std::size_t grid_size)
    {
        const double G = static_cast<double>(grid_size);
        const auto k = static_cast<long long>(std::llround((omega + std::numbers::pi) * G / (2.0 * std::numbers::pi)));
        const auto g = static_cast<long long>(grid_size);
        return static_cast<std::size_t>(((k % g) + g) % g);
    }

    // Smallest grid that resolves lags up to span without aliasing
    inline void require_grid(std::size_t grid_size, lag_t span)
    {
        if (grid_size < static_cast<std::size_t>(2 * span + 1))
            throw error(error_kind::grid_too_coarse,
                        "grid size " + std::to_string(grid_size) + " is below " + std::to_string(2 * span + 1) +
                            " needed for lag span " + std::to_string(span));
    }

    struct bias_window
    {
        std::size_t grid_size = 0;
        std::vector<double> values; // W(omega_k), one per grid point
        double normalization = 1.0; // s

        double omega(std::size_t k) const { return omega_at(k, grid_size); }
    };

    namespace detail
    {
        // sin(K a) / sin(a), with the removable singularities at a = j*pi replaced by K (-1)^(j(K-1))
        inline double sin_ratio(lag_t K, double a)
        {
            const double den = std::sin(a);
            if (std::abs(den) < 1e-12)
            {
                const auto j = std::llround(a / std::numbers::pi);
                const bool odd = ((j % 2 != 0) && ((K - 1) % 2 != 0));
                return odd ? -static_cast<double>(K) : static_cast<double>(K);
            }
            return std::sin(static_cast<double>(K) * a) / den;
        }

        inline void require_normalization(double s)
        {
            if (!(s > 0.0) || !std::isfinite(s))
                throw error(error_kind::invalid_argument, "normalization s must be a positive finite number");
        }
    }

    // Closed-form Fourier transform of the weight function, valid for 2 <= p <= M:
    //
    //   s W = F(m_tilde, N) + F(N, M) + 2 K_paired + 2 cos(w MN/2) K_unpaired + D(m_tilde, 2N-1) - 2
    //
    //   F(a, K)    = |sin(w a K/2) / sin(w a/2)|^2                               Fejer kernel
    //   D(a, K)    = sin(w a K/2) / sin(w a/2)                                   Dirichlet kernel
    //   K_paired   = sin(w m_tilde(N-1)/2) sin(w N(m_tilde-1)/2)   / (sin(w m_tilde/2) sin(w N/2))
    //   K_unpaired = sin(w m_tilde(N-1)/2) sin(w N(M-m_tilde-1)/2) / (sin(w m_tilde/2) sin(w N/2))
    //
    // The prototype (p = 1) has no unpaired lags and no extra self term, which the expression above
    // does not reduce to; use bias_via_dft for it.
    inline bias_window bias_closed_form(const cacis_config &cfg, std::size_t grid_size, double s = 1.0)
    {
        if (cfg.is_prototype())
            throw error(error_kind::unsupported_compression,
                        "closed-form bias window requires 2 <= p <= M; use the DFT of the weight function for p = 1");
        require_grid(grid_size, cfg.max_lag());
        detail::require_normalization(s);

        const lag_t M = cfg.M(), N = cfg.N(), Mt = cfg.m_tilde();
        bias_window out{grid_size, std::vector<double>(grid_size), s};

        for (std::size_t k = 0; k < grid_size; ++k)
        {
            const double w = omega_at(k, grid_size);
            const double a = 0.5 * w * static_cast<double>(Mt); // half-angle of the compressed spacing
            const double b = 0.5 * w * static_cast<double>(N);  // half-angle of the uncompressed spacing

            const double fejer_a = detail::sin_ratio(N, a);
            const double fejer_b = detail::sin_ratio(M, b);
            const double common = detail::sin_ratio(N - 1, a);

            double value = fejer_a * fejer_a + fejer_b * fejer_b;
            value += 2.0 * common * detail::sin_ratio(Mt - 1, b);
            value += 2.0 * std::cos(0.5 * w * static_cast<double>(M * N)) * common * detail::sin_ratio(M - Mt - 1, b);
            value += detail::sin_ratio(2 * N - 1, a) - 2.0;
            out.values[k] = value / s;
        }
        return out;
    }

    // Direct transform of a weight table: W(omega) = (1/s) sum_l z(l) cos(omega l).
    inline bias_window bias_via_dft(const lag_table &table, std::size_t grid_size, double s = 1.0)
    {
        require_grid(grid_size, table.span());
        detail::require_normalization(s);

        bias_window out{grid_size, std::vector<double>(grid_size), s};
        for (std::size_t k = 0; k < grid_size; ++k)
        {
            const double w = omega_at(k, grid_size);
            double acc = 0.0;
            for (lag_t l = -table.span(); l <= table.span(); ++l)
            {
                const lag_t z = table.at(l);
                if (z != 0)
                    acc += static_cast<double>(z) * std::cos(w * static_cast<double>(l));
            }
            out.values[k] = acc / s;
        }
        return out;
    }

    // Half-width of the band around a peak where compression ripples show up: the main lobe of the
    // compressed sub-array's Fejer kernel, pi / (m_tilde N).
    inline double near_lobe_halfwidth(const cacis_config &cfg)
    {
        return std::numbers::pi / static_cast<double>(cfg.m_tilde() * cfg.N());
    }

    // Indices of local minima with 0 < omega <= max_omega (the window is even, one side suffices)
    inline std::vector<std::size_t> ripple_minima(const std::vector<double> &values, std::size_t grid_size,
                                                  double max_omega)
    {
        std::vector<std::size_t> out;
        for (std::size_t k = 1; k + 1 < grid_size; ++k)
        {
            const double w = omega_at(k, grid_size);
            if (w <= 0.0 || w > max_omega)
                continue;
            if (values[k] < values[k - 1] && values[k] <= values[k + 1])
                out.push_back(k);
        }
        return out;
    }

    // max |a - b| / max |b|, the agreement measure between two windows on the same grid
    inline double max_relative_deviation(const bias_window &a, const bias_window &b)
    {
        if (a.grid_size != b.grid_size)
            throw error(error_kind::invalid_argument, "bias windows are on different grids");
        double diff = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < a.grid_size; ++k)
        {
            diff = std::max(diff, std::abs(a.values[k] - b.values[k]));
            scale = std::max(scale, std::abs(b.values[k]));
        }
        return scale > 0.0 ? diff / scale : diff;
    }
}

#endif
