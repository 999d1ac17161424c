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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any hard
// criterion fails. Usage: acceptance [output-dir]

#include <cacis/cli.hpp>

#include "oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace cacis;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace
{
    constexpr std::size_t bias_grid = 4096;
    constexpr double bias_tolerance = 1e-9;
    constexpr std::size_t spectrum_grid = 4096;
    constexpr std::size_t snapshots = 10;
    constexpr std::uint64_t seed = 1;
    constexpr double exactness_tolerance = 1e-12;
    constexpr double failure_ratio = 0.8;

    struct outcome
    {
        bool pass;
        std::string detail;
    };

    struct checker
    {
        std::vector<std::string> problems;
        std::size_t checks = 0;

        void expect(bool ok, const std::string &what)
        {
            ++checks;
            if (!ok && problems.size() < 10)
                problems.push_back(what);
            else if (!ok)
                problems.emplace_back();
        }

        outcome result(const std::string &summary) const
        {
            if (problems.empty())
                return {true, summary + " (" + std::to_string(checks) + " checks)"};
            std::string d = std::to_string(problems.size()) + " of " + std::to_string(checks) + " checks failed:";
            for (const auto &p : problems)
                if (!p.empty())
                    d += " [" + p + "]";
            return {false, d};
        }
    };

    std::string cfg_name(lag_t M, lag_t N, lag_t p)
    {
        return "(" + std::to_string(M) + "," + std::to_string(N) + "," + std::to_string(p) + ")";
    }

    using table4 = std::vector<std::tuple<lag_t, lag_t, lag_t, lag_t>>;

    outcome dof_table()
    {
        const table4 cases = {{7, 5, 1, 45},   {7, 5, 7, 61},   {4, 3, 1, 17},   {4, 3, 2, 17},
                              {4, 3, 4, 19},   {3, 4, 3, 17},   {8, 9, 1, 87},   {8, 9, 2, 103},
                              {8, 9, 4, 119},  {8, 9, 8, 127},  {9, 8, 1, 87},   {9, 8, 3, 115},
                              {9, 8, 9, 129}};
        checker c;
        for (const auto &[M, N, p, expected] : cases)
        {
            const auto cfg = make_config(M, N, p);
            const auto got = dof(cfg);
            const auto brute = static_cast<lag_t>(brute_force_difference_oracle(cfg).size());
            c.expect(got == expected, cfg_name(M, N, p) + " dof " + std::to_string(got));
            c.expect(brute == expected, cfg_name(M, N, p) + " enumerated " + std::to_string(brute));
        }
        return c.result("13 configurations, formula and enumeration agree with the table");
    }

    outcome first_hole_table()
    {
        const table4 cases = {{7, 5, 1, 12}, {7, 5, 7, 31}, {4, 3, 1, 7},  {4, 3, 2, 8},  {4, 3, 4, 10},
                              {3, 4, 3, 9},  {8, 9, 1, 17}, {8, 9, 2, 40}, {8, 9, 4, 56}, {8, 9, 8, 64},
                              {9, 8, 1, 17}, {9, 8, 3, 51}, {9, 8, 9, 65}};
        checker c;
        for (const auto &[M, N, p, expected] : cases)
        {
            const auto cfg = make_config(M, N, p);
            const auto h = first_hole(cfg);
            c.expect(h == expected, cfg_name(M, N, p) + " hole " + std::to_string(h));
            const auto coarray = oracle::pair_counts(M, N, p);
            c.expect(!coarray.count(h) && !coarray.count(-h), cfg_name(M, N, p) + " hole present");
            for (lag_t l = 0; l < h; ++l)
                c.expect(coarray.count(l) && coarray.count(-l), cfg_name(M, N, p) + " missing " + std::to_string(l));
        }
        return c.result("13 configurations, each hole absent and all smaller lags present");
    }

    outcome weight_oracle()
    {
        checker c;
        const auto grid = oracle::config_grid();
        for (const auto &[M, N, p] : grid)
        {
            const auto cfg = make_config(M, N, p);
            const auto closed = weight_closed_form(cfg);
            const auto brute = weight_brute_force(cfg);
            const auto ref = oracle::pair_counts(M, N, p);
            for (lag_t l = -closed.span(); l <= closed.span(); ++l)
            {
                const auto it = ref.find(l);
                const lag_t expected = it == ref.end() ? 0 : it->second;
                c.expect(closed[l] == brute[l] && closed[l] == expected,
                         cfg_name(M, N, p) + " lag " + std::to_string(l));
            }
            c.expect(closed.total() == (M + N - 1) * (M + N - 1), cfg_name(M, N, p) + " total");
        }
        return c.result(std::to_string(grid.size()) + " configurations, every lag exact");
    }

    outcome property_suite()
    {
        checker c;
        const auto grid = oracle::config_grid();
        for (const auto &[M, N, p] : grid)
        {
            const auto cfg = make_config(M, N, p);
            const lag_t Mt = cfg.m_tilde();
            const auto part = partition(cfg);
            const auto cross_plus = distinct(cross_differences(cfg).plus);
            const auto name = cfg_name(M, N, p);

            for (const auto &l : part.paired_plus)
            {
                const auto mirror = std::find_if(part.paired_plus.begin(), part.paired_plus.end(),
                                                 [&](const labeled_lag &o) { return o.lag == -l.lag; });
                c.expect(mirror != part.paired_plus.end() && mirror->n == N - l.n && mirror->m == Mt - l.m,
                         name + " mirror of " + std::to_string(l.lag));
            }
            for (const auto &l : part.unpaired_plus)
            {
                c.expect(l.lag < 0, name + " unpaired sign " + std::to_string(l.lag));
                c.expect(!cross_plus.contains(-l.lag), name + " unpaired mirror " + std::to_string(l.lag));
            }
            c.expect(static_cast<lag_t>(distinct(part.paired_plus).size()) == (Mt - 1) * (N - 1), name + " |paired+|");
            c.expect(static_cast<lag_t>(part.paired.size()) == (Mt - 1) * (N - 1), name + " |paired|");
            c.expect(static_cast<lag_t>(distinct(part.unpaired_plus).size()) == (N - 1) * (M - Mt - 1) || p == 1,
                     name + " |unpaired+|");
            c.expect(static_cast<lag_t>(part.unpaired.size()) == (p == 1 ? 0 : 2 * (N - 1) * (M - Mt - 1)),
                     name + " |unpaired|");

            // continuity up to the first hole
            const lag_t h = first_hole(cfg);
            for (lag_t l = -(h - 1); l <= h - 1; ++l)
                c.expect(part.cross.contains(l), name + " continuity " + std::to_string(l));
            c.expect(!part.cross.contains(h) && !part.cross.contains(-h), name + " hole");
            if (p >= 2)
                c.expect(h == M * N - Mt * (N - 1), name + " hole formula");
        }
        return c.result(std::to_string(grid.size()) + " configurations");
    }

    std::vector<std::vector<double>> read_numeric_csv(const fs::path &path)
    {
        std::ifstream f(path);
        std::string line;
        std::getline(f, line); // header
        std::vector<std::vector<double>> rows;
        while (std::getline(f, line))
        {
            std::vector<double> row;
            for (const auto cell : csv::split(line))
            {
                double v = 0.0;
                csv::parse_double(cell, v);
                row.push_back(v);
            }
            rows.push_back(row);
        }
        return rows;
    }

    outcome bias_oracle(const fs::path &out_dir)
    {
        checker c;
        double worst = 0.0;
        std::size_t configs = 0;
        for (const auto &[M, N, p] : oracle::config_grid())
        {
            if (p == 1)
                continue;
            ++configs;
            const auto cfg = make_config(M, N, p);
            const double dev =
                max_relative_deviation(bias_closed_form(cfg, bias_grid), bias_via_dft(weight_closed_form(cfg), bias_grid));
            worst = std::max(worst, dev);
            c.expect(dev < bias_tolerance, cfg_name(M, N, p) + " deviation " + std::to_string(dev));
        }

        // Shape check on the emitted CSV for the nested (7,5,7) array
        const auto dir = out_dir / "bias_7_5_7";
        std::ostringstream sink_out, sink_err;
        const int code = cli::run({"bias", "7", "5", "7", "--grid", std::to_string(bias_grid), "--oracle", "--out",
                                   dir.string()},
                                  sink_out, sink_err);
        c.expect(code == 0, "bias CLI exit " + std::to_string(code));
        std::size_t minima_count = 0;
        double lowest = 0.0;
        if (code == 0)
        {
            const auto rows = read_numeric_csv(dir / "bias.csv");
            std::vector<double> w;
            for (const auto &r : rows)
                w.push_back(r.at(1));
            const double peak = *std::max_element(w.begin(), w.end());
            for (auto &v : w)
                v /= peak;
            const auto cfg = make_config(7, 5, 7);
            const auto minima = ripple_minima(w, w.size(), near_lobe_halfwidth(cfg));
            minima_count = minima.size();
            c.expect(!minima.empty(), "no ripple minima in the near-lobe band");
            lowest = 1.0;
            for (const auto k : minima)
            {
                lowest = std::min(lowest, w[k]);
                c.expect(w[k] > 0.0, "ripple minimum " + std::to_string(w[k]));
            }
        }

        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "%zu configurations, worst deviation %.2e < %.0e; (7,5,7) has %zu ripple minima in "
                      "0 < omega <= pi/5, lowest %.4f of peak",
                      configs, worst, bias_tolerance, minima_count, lowest);
        return c.result(buf);
    }

    std::string bins_text(const std::vector<double> &offsets)
    {
        std::string s;
        char buf[32];
        for (const double o : offsets)
        {
            std::snprintf(buf, sizeof(buf), "%s%+.1f", s.empty() ? "" : ", ", o);
            s += buf;
        }
        return s;
    }

    outcome single_peak()
    {
        const auto cfg = make_config(7, 5, 1);
        const auto est = estimate_spectrum(signal_spec::tones({0.1 * pi}, seed), cfg, snapshots, spectrum_grid);
        const auto argmax = static_cast<std::size_t>(
            std::max_element(est.spectrum.begin(), est.spectrum.end()) - est.spectrum.begin());
        const double bin = 2.0 * pi / static_cast<double>(spectrum_grid);
        const double offset = (est.omega(argmax) - 0.1 * pi) / bin;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "(7,5,1) L=10 grid 4096: argmax at %.5f pi, %+.2f bins from 0.1 pi",
                      est.omega(argmax) / pi, offset);
        return {std::abs(offset) <= 1.0, buf};
    }

    outcome multi_peak()
    {
        const auto cfg = make_config(7, 5, 1);
        const std::vector<double> truth{0.1 * pi, 0.3 * pi, 0.6 * pi};
        const auto est = estimate_spectrum(signal_spec::tones(truth, seed), cfg, snapshots, spectrum_grid);
        const auto peaks = find_peaks(est.spectrum, 3, 3);
        const double bin = 2.0 * pi / static_cast<double>(spectrum_grid);

        bool pass = peaks.size() == 3;
        std::vector<double> offsets;
        for (const double f : truth)
        {
            double best = 1e300;
            for (const auto k : peaks)
                if (std::abs(est.omega(k) - f) < std::abs(best))
                    best = est.omega(k) - f;
            offsets.push_back(best / bin);
            pass = pass && std::abs(best) <= bin;
        }

        // Same measurement with the random-phase cross terms averaged away: the leakage between the
        // three window copies alone moves the maxima.
        const auto many = estimate_spectrum(signal_spec::tones(truth, seed), cfg, 4000, spectrum_grid);
        const auto many_peaks = find_peaks(many.spectrum, 3, 3);
        std::vector<double> limit_offsets;
        for (const double f : truth)
        {
            double best = 1e300;
            for (const auto k : many_peaks)
                if (std::abs(many.omega(k) - f) < std::abs(best))
                    best = many.omega(k) - f;
            limit_offsets.push_back(best / bin);
        }
        return {pass, "(7,5,1) L=10 grid 4096: peak offsets [" + bins_text(offsets) +
                          "] bins, tolerance 1 bin; L=4000 offsets [" + bins_text(limit_offsets) + "] bins"};
    }

    outcome nested_failure_soft()
    {
        const auto cfg = make_config(5, 7, 5);
        const auto est = estimate_spectrum(signal_spec::tones({0.1 * pi}, seed), cfg, snapshots, spectrum_grid);
        const auto peaks = find_peaks(est.spectrum, 3);
        const double band = near_lobe_halfwidth(cfg);
        const auto main = static_cast<std::size_t>(
            std::max_element(est.spectrum.begin(), est.spectrum.end()) - est.spectrum.begin());
        double strongest = 0.0;
        for (const auto k : peaks)
        {
            const double d = std::abs(est.omega(k) - 0.1 * pi);
            if (k != main && d <= band)
                strongest = std::max(strongest, est.spectrum[k] / est.spectrum[main]);
        }
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "(5,7,5) L=10: strongest spurious maximum within pi/7 of 0.1 pi is %.3f of the main peak "
                      "(threshold %.2f)",
                      strongest, failure_ratio);
        return {strongest >= failure_ratio, buf};
    }

    outcome noise_free_exactness()
    {
        checker c;
        std::mt19937_64 gen(77);
        std::uniform_real_distribution<double> freq(-0.999 * pi, pi);
        double worst = 0.0;
        const auto grid = oracle::config_grid();
        for (const auto &[M, N, p] : grid)
        {
            const auto cfg = make_config(M, N, p);
            const auto z = weight_closed_form(cfg);
            for (const std::size_t L : {1u, 2u, 10u})
            {
                const double w0 = freq(gen);
                const auto x = generate_signal(signal_spec{{w0}, {1.0}, gen()}, L, static_cast<std::size_t>(cfg.period()));
                const auto r = estimate_autocorrelation(acquire(x, cfg, L), cfg);
                double err = 0.0;
                for (lag_t l = -r.span; l <= r.span; ++l)
                    if (z[l] > 0)
                        err = std::max(err, std::abs(r.at(l) - std::polar(1.0, w0 * static_cast<double>(l))));
                worst = std::max(worst, err);
                c.expect(err < exactness_tolerance, cfg_name(M, N, p) + " L=" + std::to_string(L));
            }
        }
        char buf[120];
        std::snprintf(buf, sizeof(buf), "%zu configurations x L in {1,2,10}, worst error %.2e < 1e-12", grid.size(), worst);
        return c.result(buf);
    }
}

int main(int argc, char **argv)
{
    const fs::path out_dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "cacis_acceptance";
    fs::create_directories(out_dir);

    struct criterion
    {
        std::string id, name;
        std::function<outcome()> run;
        bool hard;
    };
    const std::vector<criterion> criteria = {
        {"1", "dof table", dof_table, true},
        {"2", "first-hole table", first_hole_table, true},
        {"3", "weight-function oracle", weight_oracle, true},
        {"4", "difference-set property suite", property_suite, true},
        {"5", "bias window oracle and ripple shape", [&] { return bias_oracle(out_dir); }, true},
        {"6a", "single-peak estimation", single_peak, true},
        {"6b", "multi-peak estimation", multi_peak, true},
        {"6c", "nested-array failure case (soft)", nested_failure_soft, false},
        {"7", "noise-free exactness", noise_free_exactness, true},
    };

    int hard_failures = 0;
    for (const auto &c : criteria)
    {
        outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const char *tag = o.pass ? "PASS" : (c.hard ? "FAIL" : "SOFT-FAIL");
        std::printf("[%s] %s %s: %s\n", tag, c.id.c_str(), c.name.c_str(), o.detail.c_str());
        if (!o.pass && c.hard)
            ++hard_failures;
    }
    std::printf("%d hard criteria failed\n", hard_failures);
    return hard_failures == 0 ? 0 : 1;
}
