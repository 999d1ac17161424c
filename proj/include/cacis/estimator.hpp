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

#ifndef CACIS_ESTIMATOR_HPP
#define CACIS_ESTIMATOR_HPP

#include "bias.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

// Sub-Nyquist acquisition and correlogram spectral estimation.
//
// A snapshot is one block of period() = MN Nyquist slots; within each block the sampler keeps the
// M + N - 1 union positions. The autocorrelation at lag l averages every ordered sample pair
// (u, v) with u - v = l over all snapshots, so all contributors are used from the first snapshot.

namespace cacis
{
    using cplx = std::complex<double>;

    struct signal_spec
    {
        std::vector<double> frequencies; // radians per sample, in (-pi, pi]
        std::vector<double> amplitudes;  // same length, positive
        std::uint64_t seed = 1;

        // Unit-amplitude components
        static signal_spec tones(std::vector<double> frequencies, std::uint64_t seed = 1)
        {
            signal_spec s;
            s.amplitudes.assign(frequencies.size(), 1.0);
            s.frequencies = std::move(frequencies);
            s.seed = seed;
            return s;
        }
    };

    inline void validate(const signal_spec &spec)
    {
        if (spec.frequencies.empty())
            throw error(error_kind::invalid_argument, "signal needs at least one component");
        if (spec.frequencies.size() != spec.amplitudes.size())
            throw error(error_kind::invalid_argument, "frequency and amplitude lists differ in length");
        for (const double w : spec.frequencies)
            if (!std::isfinite(w) || w <= -std::numbers::pi || w > std::numbers::pi)
                throw error(error_kind::invalid_argument, "frequencies must lie in (-pi, pi]");
        for (const double a : spec.amplitudes)
            if (!std::isfinite(a) || a <= 0.0)
                throw error(error_kind::invalid_argument, "amplitudes must be positive");
    }

    namespace detail
    {
        // Uniform in [0, 1) from the top 53 bits; identical on every platform for a given seed
        inline double unit_uniform(std::mt19937_64 &gen)
        {
            return static_cast<double>(gen() >> 11) * 0x1.0p-53;
        }

        // exp(j(w t + phi)) with the phase reduced in extended precision, so long records stay exact
        // to double rounding.
        inline cplx unit_phasor(double w, std::int64_t t, double phi)
        {
            constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
            const long double arg = std::remainder(static_cast<long double>(w) * static_cast<long double>(t), two_pi) +
                                    static_cast<long double>(phi);
            return std::polar(1.0, static_cast<double>(arg));
        }
    }

    // Noise-free sum of complex exponentials at the Nyquist rate. Every component gets a fresh
    // uniform phase in [0, 2 pi) at the start of each snapshot.
    inline std::vector<cplx> generate_signal(const signal_spec &spec, std::size_t num_snapshots, std::size_t stride)
    {
        validate(spec);
        if (num_snapshots < 1 || stride < 1)
            throw error(error_kind::invalid_argument, "need at least one snapshot of non-zero length");

        std::mt19937_64 gen(spec.seed);
        std::vector<cplx> x(num_snapshots * stride);
        std::vector<double> phases(spec.frequencies.size());

        for (std::size_t snap = 0; snap < num_snapshots; ++snap)
        {
            for (auto &phi : phases)
                phi = 2.0 * std::numbers::pi * detail::unit_uniform(gen);

            for (std::size_t i = 0; i < stride; ++i)
            {
                const auto t = static_cast<std::int64_t>(snap * stride + i);
                cplx acc{0.0, 0.0};
                for (std::size_t c = 0; c < phases.size(); ++c)
                    acc += spec.amplitudes[c] * detail::unit_phasor(spec.frequencies[c], t, phases[c]);
                x[snap * stride + i] = acc;
            }
        }
        return x;
    }

    struct sample
    {
        lag_t position; // within-snapshot Nyquist index
        cplx value;
    };

    struct snapshot_samples
    {
        std::vector<std::vector<sample>> snapshots;
        std::size_t stride = 0;
    };

    // Snapshot l reads signal[l * MN + u] for every union position u.
    inline snapshot_samples acquire(std::span<const cplx> signal, const cacis_config &cfg, std::size_t num_snapshots)
    {
        if (num_snapshots < 1)
            throw error(error_kind::invalid_argument, "need at least one snapshot");
        const auto stride = static_cast<std::size_t>(cfg.period());
        if (signal.size() < num_snapshots * stride)
            throw error(error_kind::insufficient_signal,
                        "signal has " + std::to_string(signal.size()) + " samples, " +
                            std::to_string(num_snapshots * stride) + " needed for " + std::to_string(num_snapshots) +
                            " snapshots");

        const auto positions = sampler_grid(cfg).union_positions;
        snapshot_samples out;
        out.stride = stride;
        out.snapshots.resize(num_snapshots);
        for (std::size_t snap = 0; snap < num_snapshots; ++snap)
        {
            auto &rec = out.snapshots[snap];
            rec.reserve(positions.size());
            for (const lag_t u : positions)
                rec.push_back({u, signal[snap * stride + static_cast<std::size_t>(u)]});
        }
        return out;
    }

    enum class normalization
    {
        per_lag, // divide by L z(l): average of all contributors, exact for a single tone
        fixed    // divide by L (M + N - 1): biased estimate whose mean is z(l) r(l) / (M + N - 1)
    };

    struct autocorrelation
    {
        lag_t span = 0;
        std::vector<cplx> values;       // lags -span..span
        std::vector<lag_t> pair_counts; // ordered pairs per snapshot at each lag, -span..span

        cplx at(lag_t l) const { return values[static_cast<std::size_t>(l + span)]; }
        lag_t pairs_at(lag_t l) const { return pair_counts[static_cast<std::size_t>(l + span)]; }
    };

    inline autocorrelation estimate_autocorrelation(const snapshot_samples &samples, const cacis_config &cfg,
                                                    normalization norm = normalization::per_lag)
    {
        if (samples.snapshots.empty())
            throw error(error_kind::invalid_argument, "need at least one snapshot");

        const lag_t span = cfg.max_lag();
        const auto size = static_cast<std::size_t>(2 * span + 1);
        autocorrelation r{span, std::vector<cplx>(size), std::vector<lag_t>(size, 0)};

        // Non-negative lags are accumulated in a fixed order (snapshot, u, v); the negative half is
        // the conjugate mirror.
        std::vector<cplx> sums(static_cast<std::size_t>(span + 1));
        for (std::size_t snap = 0; snap < samples.snapshots.size(); ++snap)
        {
            const auto &rec = samples.snapshots[snap];
            for (const auto &[u, xu] : rec)
                for (const auto &[v, xv] : rec)
                {
                    const lag_t l = u - v;
                    if (std::abs(l) > span)
                        throw std::logic_error("sample pair outside the coarray span");
                    if (snap == 0)
                        ++r.pair_counts[static_cast<std::size_t>(l + span)];
                    if (l >= 0)
                        sums[static_cast<std::size_t>(l)] += xu * std::conj(xv);
                }
        }

        const double L = static_cast<double>(samples.snapshots.size());
        for (lag_t l = 0; l <= span; ++l)
        {
            const lag_t z = r.pairs_at(l);
            cplx value{0.0, 0.0};
            if (z > 0)
            {
                const double denom = norm == normalization::per_lag ? L * static_cast<double>(z)
                                                                    : L * static_cast<double>(cfg.num_positions());
                value = sums[static_cast<std::size_t>(l)] / denom;
            }
            if (l == 0)
                value = {value.real(), 0.0};
            r.values[static_cast<std::size_t>(span + l)] = value;
            r.values[static_cast<std::size_t>(span - l)] = std::conj(value);
        }
        return r;
    }

    struct spectrum_estimate
    {
        autocorrelation autocorr;
        std::vector<double> spectrum; // |sum_l r(l) exp(-j omega_k l)|
        std::size_t grid_size = 0;

        double omega(std::size_t k) const { return omega_at(k, grid_size); }
    };

    // Correlogram on the shared omega grid. Holes enter as zero autocorrelation.
    inline spectrum_estimate correlogram(const autocorrelation &r, std::size_t grid_size)
    {
        require_grid(grid_size, r.span);
        spectrum_estimate out{r, std::vector<double>(grid_size), grid_size};
        for (std::size_t k = 0; k < grid_size; ++k)
        {
            const double w = omega_at(k, grid_size);
            cplx acc{0.0, 0.0};
            for (lag_t l = -r.span; l <= r.span; ++l)
                acc += r.at(l) * std::polar(1.0, -w * static_cast<double>(l));
            out.spectrum[k] = std::abs(acc);
        }
        return out;
    }

    // Strict local maxima on the circular grid, largest first, each at least min_separation bins
    // from every larger one already taken.
    inline std::vector<std::size_t> find_peaks(std::span<const double> values, std::size_t min_separation = 3,
                                               std::size_t max_count = 0)
    {
        const std::size_t G = values.size();
        std::vector<std::size_t> candidates;
        if (G < 3)
            return candidates;
        for (std::size_t k = 0; k < G; ++k)
        {
            const double prev = values[(k + G - 1) % G], next = values[(k + 1) % G];
            if (values[k] > prev && values[k] >= next)
                candidates.push_back(k);
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

        std::vector<std::size_t> peaks;
        for (const auto k : candidates)
        {
            const bool separated = std::all_of(peaks.begin(), peaks.end(), [&](std::size_t j) {
                const std::size_t d = k > j ? k - j : j - k;
                return std::min(d, G - d) >= min_separation;
            });
            if (separated)
                peaks.push_back(k);
            if (max_count != 0 && peaks.size() == max_count)
                break;
        }
        return peaks;
    }

    // generate -> acquire -> estimate -> correlogram
    inline spectrum_estimate estimate_spectrum(const signal_spec &spec, const cacis_config &cfg,
                                               std::size_t num_snapshots, std::size_t grid_size,
                                               normalization norm = normalization::per_lag)
    {
        require_grid(grid_size, cfg.max_lag());
        const auto x = generate_signal(spec, num_snapshots, static_cast<std::size_t>(cfg.period()));
        const auto samples = acquire(x, cfg, num_snapshots);
        return correlogram(estimate_autocorrelation(samples, cfg, norm), grid_size);
    }
}

#endif
