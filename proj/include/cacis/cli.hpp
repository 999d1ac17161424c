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

#ifndef CACIS_CLI_HPP
#define CACIS_CLI_HPP

#include "bias.hpp"
#include "csv.hpp"
#include "diffsets.hpp"
#include "estimator.hpp"
#include "weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

// Command-line front end. Subcommands: design, weights, bias, estimate, replay.
//
// Every command that writes files also writes <command>.manifest.json next to them. The manifest
// records the exact argument list (with the output directory made explicit), so
// `cacis replay <manifest>` regenerates identical files.

namespace cacis::cli
{
    inline constexpr const char *tool_version = "0.1.0";

    enum exit_code : int
    {
        ok = 0,
        validation_error = 2,
        oracle_mismatch = 3,
        io_failure = 4
    };

    // Agreement required between the closed-form and DFT bias windows
    inline constexpr double bias_oracle_tolerance = 1e-9;

    using json = nlohmann::json;

    namespace detail
    {
        struct context
        {
            std::vector<std::string> argv; // arguments after the program name
            std::ostream &out;
            std::ostream &err;
        };

        inline std::string default_out_dir()
        {
            if (const char *env = std::getenv("CACIS_OUT_DIR"); env && *env)
                return env;
            return ".";
        }

        inline std::filesystem::path prepare_dir(const std::string &dir)
        {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec)
                throw csv::io_error("cannot create output directory " + dir + ": " + ec.message());
            return std::filesystem::path(dir);
        }

        inline void write_text(const std::filesystem::path &path, const std::string &text)
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
                throw csv::io_error("cannot open " + path.string() + " for writing");
            f << text;
            if (!f)
                throw csv::io_error("failed writing " + path.string());
        }

        // argv with "--out <dir>" made explicit so replay does not depend on the environment
        inline std::vector<std::string> explicit_argv(std::vector<std::string> argv, const std::string &out_dir)
        {
            for (std::size_t i = 0; i < argv.size(); ++i)
            {
                if (argv[i] == "--out" && i + 1 < argv.size())
                {
                    argv.erase(argv.begin() + static_cast<long>(i), argv.begin() + static_cast<long>(i) + 2);
                    break;
                }
                if (argv[i].rfind("--out=", 0) == 0)
                {
                    argv.erase(argv.begin() + static_cast<long>(i));
                    break;
                }
            }
            argv.push_back("--out");
            argv.push_back(out_dir);
            return argv;
        }

        inline void write_manifest(const context &ctx, const std::string &command, const std::string &out_dir,
                                   json parameters, std::optional<std::uint64_t> seed,
                                   const std::vector<std::filesystem::path> &outputs)
        {
            json m;
            m["command"] = command;
            m["tool_version"] = tool_version;
            m["argv"] = explicit_argv(ctx.argv, out_dir);
            m["parameters"] = std::move(parameters);
            m["seed"] = seed ? json(*seed) : json(nullptr);
            json paths = json::array();
            for (const auto &p : outputs)
                paths.push_back(p.string());
            m["outputs"] = paths;
            write_text(prepare_dir(out_dir) / (command + ".manifest.json"), m.dump(2) + "\n");
        }

        // "0.1,0.3,0.6" -> {0.1, 0.3, 0.6}
        inline std::vector<double> parse_list(const std::string &text, const std::string &what)
        {
            std::vector<double> values;
            for (const auto cell : csv::split(text))
            {
                double v = 0.0;
                if (!csv::parse_double(cell, v) || !std::isfinite(v))
                    throw error(error_kind::invalid_argument, "malformed " + what + " list: '" + text + "'");
                values.push_back(v);
            }
            return values;
        }

        inline json design_entry(const cacis_config &cfg)
        {
            const auto grid = sampler_grid(cfg);
            const auto [lo, hi] = lag_range(cfg);
            return json{{"p", cfg.p()},
                        {"M_tilde", cfg.m_tilde()},
                        {"dof", dof(cfg)},
                        {"first_hole", first_hole(cfg)},
                        {"lag_range", {lo, hi}},
                        {"positions_compressed", grid.positions_a},
                        {"positions_uncompressed", grid.positions_b},
                        {"union_positions", grid.union_positions}};
        }

        inline int cmd_design(const context &ctx, lag_t M, lag_t N, std::optional<lag_t> p, const std::string &out_dir)
        {
            json report;
            report["M"] = M;
            report["N"] = N;
            report["valid_compressions"] = valid_compressions(M, N);
            json designs = json::array();
            if (p)
                designs.push_back(design_entry(make_config(M, N, *p)));
            else
                for (const lag_t q : valid_compressions(M, N))
                    designs.push_back(design_entry(make_config(M, N, q)));
            report["designs"] = designs;

            const auto text = report.dump(2) + "\n";
            const auto dir = prepare_dir(out_dir);
            write_text(dir / "design.json", text);
            write_manifest(ctx, "design", out_dir, {{"M", M}, {"N", N}, {"p", p ? json(*p) : json(nullptr)}},
                           std::nullopt, {dir / "design.json"});
            ctx.out << text;
            return ok;
        }

        inline int cmd_weights(const context &ctx, lag_t M, lag_t N, lag_t p, bool oracle, const std::string &out_dir)
        {
            const auto cfg = make_config(M, N, p);
            const auto closed = weight_closed_form(cfg);
            std::optional<lag_table> brute;
            if (oracle)
                brute = weight_brute_force(cfg);

            csv::table t;
            t.header = {"lag", "z_closed"};
            if (oracle)
                t.header.push_back("z_brute");
            std::vector<lag_t> mismatches;
            for (lag_t l = -closed.span(); l <= closed.span(); ++l)
            {
                std::vector<std::string> row{csv::format(static_cast<long long>(l)),
                                             csv::format(static_cast<long long>(closed.at(l)))};
                if (brute)
                {
                    row.push_back(csv::format(static_cast<long long>(brute->at(l))));
                    if (brute->at(l) != closed.at(l))
                        mismatches.push_back(l);
                }
                t.rows.push_back(std::move(row));
            }

            const auto dir = prepare_dir(out_dir);
            csv::write((dir / "weights.csv").string(), t);
            write_manifest(ctx, "weights", out_dir, {{"M", M}, {"N", N}, {"p", p}, {"oracle", oracle}}, std::nullopt,
                           {dir / "weights.csv"});

            ctx.out << json{{"span", closed.span()}, {"nonzero", closed.nonzero_count()}, {"total", closed.total()},
                            {"oracle", oracle ? json(mismatches.empty() ? "match" : "mismatch") : json(nullptr)}}
                           .dump()
                    << "\n";
            if (!mismatches.empty())
            {
                ctx.err << json{{"error", "OracleMismatch"}, {"lags", mismatches}}.dump() << "\n";
                return oracle_mismatch;
            }
            return ok;
        }

        inline int cmd_bias(const context &ctx, lag_t M, lag_t N, lag_t p, std::size_t grid, double s, bool oracle,
                            const std::string &out_dir)
        {
            const auto cfg = make_config(M, N, p);
            require_grid(grid, cfg.max_lag());
            const auto dft = bias_via_dft(weight_closed_form(cfg), grid, s);

            csv::table t;
            std::optional<bias_window> closed;
            if (cfg.is_prototype())
            {
                ctx.err << "note: closed-form bias window is not defined for p = 1; emitting the DFT of the weight function only\n";
                t.header = {"omega", "w_dft"};
            }
            else
            {
                closed = bias_closed_form(cfg, grid, s);
                t.header = {"omega", "w_closed"};
                if (oracle)
                    t.header.push_back("w_dft");
            }

            for (std::size_t k = 0; k < grid; ++k)
            {
                std::vector<std::string> row{csv::format(omega_at(k, grid))};
                if (closed)
                {
                    row.push_back(csv::format(closed->values[k]));
                    if (oracle)
                        row.push_back(csv::format(dft.values[k]));
                }
                else
                    row.push_back(csv::format(dft.values[k]));
                t.rows.push_back(std::move(row));
            }

            const auto dir = prepare_dir(out_dir);
            csv::write((dir / "bias.csv").string(), t);
            write_manifest(ctx, "bias", out_dir,
                           {{"M", M}, {"N", N}, {"p", p}, {"grid", grid}, {"s", s}, {"oracle", oracle}}, std::nullopt,
                           {dir / "bias.csv"});

            json summary{{"grid", grid}, {"s", s}};
            int code = ok;
            if (closed && oracle)
            {
                const double dev = max_relative_deviation(*closed, dft);
                summary["max_relative_deviation"] = dev;
                if (!(dev < bias_oracle_tolerance))
                {
                    ctx.err << json{{"error", "OracleMismatch"}, {"max_relative_deviation", dev}}.dump() << "\n";
                    code = oracle_mismatch;
                }
            }
            ctx.out << summary.dump() << "\n";
            return code;
        }

        struct estimate_options
        {
            lag_t M = 0, N = 0, p = 1;
            std::string freqs, amps, input, norm = "per-lag";
            std::size_t snapshots = 10, grid = 4096, peaks = 0;
            std::uint64_t seed = 1;
        };

        inline int cmd_estimate(const context &ctx, const estimate_options &o, const std::string &out_dir)
        {
            const auto cfg = make_config(o.M, o.N, o.p);
            require_grid(o.grid, cfg.max_lag());
            if (o.snapshots < 1)
                throw error(error_kind::invalid_argument, "--snapshots must be at least 1");
            if (o.input.empty() == o.freqs.empty())
                throw error(error_kind::invalid_argument, "give exactly one of --freqs or --input");

            const normalization norm = o.norm == "fixed" ? normalization::fixed : normalization::per_lag;

            std::vector<cplx> signal;
            std::size_t num_components = 0;
            json params{{"M", o.M}, {"N", o.N}, {"p", o.p}, {"snapshots", o.snapshots},
                        {"grid", o.grid}, {"normalization", o.norm}};
            if (!o.input.empty())
            {
                signal = csv::read_complex_samples(o.input);
                params["input"] = o.input;
            }
            else
            {
                const auto units = parse_list(o.freqs, "frequency");
                signal_spec spec;
                for (const double f : units)
                    spec.frequencies.push_back(f * std::numbers::pi);
                spec.amplitudes = o.amps.empty() ? std::vector<double>(units.size(), 1.0) : parse_list(o.amps, "amplitude");
                spec.seed = o.seed;
                validate(spec);
                num_components = units.size();
                signal = generate_signal(spec, o.snapshots, static_cast<std::size_t>(cfg.period()));
                params["freqs_over_pi"] = units;
                params["amps"] = spec.amplitudes;
            }

            const auto samples = acquire(signal, cfg, o.snapshots);
            const auto est = correlogram(estimate_autocorrelation(samples, cfg, norm), o.grid);

            csv::table spec_csv{{"omega", "magnitude"}, {}};
            for (std::size_t k = 0; k < o.grid; ++k)
                spec_csv.rows.push_back({csv::format(est.omega(k)), csv::format(est.spectrum[k])});
            csv::table acf_csv{{"lag", "real", "imag"}, {}};
            for (lag_t l = -est.autocorr.span; l <= est.autocorr.span; ++l)
            {
                const auto r = est.autocorr.at(l);
                acf_csv.rows.push_back({csv::format(static_cast<long long>(l)), csv::format(r.real()), csv::format(r.imag())});
            }

            const auto dir = prepare_dir(out_dir);
            csv::write((dir / "spectrum.csv").string(), spec_csv);
            csv::write((dir / "autocorr.csv").string(), acf_csv);
            const bool synthetic = o.input.empty();
            write_manifest(ctx, "estimate", out_dir, params, synthetic ? std::optional<std::uint64_t>(o.seed) : std::nullopt,
                           {dir / "spectrum.csv", dir / "autocorr.csv"});

            const std::size_t want = o.peaks != 0 ? o.peaks : (num_components != 0 ? num_components : 5);
            json peaks = json::array();
            for (const auto k : find_peaks(est.spectrum, 3, want))
                peaks.push_back({{"bin", k},
                                 {"omega", est.omega(k)},
                                 {"omega_over_pi", est.omega(k) / std::numbers::pi},
                                 {"magnitude", est.spectrum[k]}});
            ctx.out << json{{"peaks", peaks}}.dump(2) << "\n";
            return ok;
        }

        inline void report_error(std::ostream &err, std::string_view name, const std::string &message)
        {
            err << json{{"error", name}, {"message", message}}.dump() << "\n";
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out = std::cout, std::ostream &err = std::cerr);

    namespace detail
    {
        inline int replay(const context &ctx, const std::string &manifest_path, const std::string &out_override)
        {
            std::ifstream f(manifest_path);
            if (!f)
                throw csv::io_error("cannot open manifest " + manifest_path);
            json m;
            try
            {
                f >> m;
            }
            catch (const json::exception &e)
            {
                throw error(error_kind::invalid_argument, "malformed manifest: " + std::string(e.what()));
            }
            if (!m.contains("argv") || !m["argv"].is_array())
                throw error(error_kind::invalid_argument, "manifest has no argv");
            auto argv = m["argv"].get<std::vector<std::string>>();
            if (!argv.empty() && argv.front() == "replay")
                throw error(error_kind::invalid_argument, "manifest refers to another replay");
            if (!out_override.empty())
                argv = explicit_argv(argv, out_override);
            if (m.value("tool_version", std::string{}) != tool_version)
                ctx.err << "note: manifest written by version " << m.value("tool_version", std::string{"?"}) << "\n";
            return run(argv, ctx.out, ctx.err);
        }
    }

    // Runs one command; args exclude the program name. Returns the process exit code.
    inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        detail::context ctx{args, out, err};

        CLI::App app{"Co-prime arrays with compressed inter-element spacing: design, weights, bias windows, "
                     "correlogram estimation",
                     "cacis"};
        app.require_subcommand(1);
        app.set_version_flag("--version", tool_version);

        std::string out_dir = detail::default_out_dir();
        lag_t M = 0, N = 0, p = 1;

        auto *design = app.add_subcommand("design", "Valid compressions and coarray summary as JSON");
        std::optional<lag_t> design_p;
        design->add_option("M", M, "Uncompressed sub-array element count")->required();
        design->add_option("N", N, "Compressed sub-array element count")->required();
        design->add_option("--p", design_p, "Only report this compression factor");
        design->add_option("--out", out_dir, "Output directory (default $CACIS_OUT_DIR or .)");

        auto *weights = app.add_subcommand("weights", "Weight function z(l) as CSV");
        bool weights_oracle = false;
        weights->add_option("M", M)->required();
        weights->add_option("N", N)->required();
        weights->add_option("p", p)->required();
        weights->add_flag("--oracle", weights_oracle, "Add the brute-force column; exit 3 on any mismatch");
        weights->add_option("--out", out_dir);

        auto *bias = app.add_subcommand("bias", "Correlogram bias window as CSV");
        std::size_t bias_grid = 4096;
        double bias_s = 1.0;
        bool bias_oracle = false;
        bias->add_option("M", M)->required();
        bias->add_option("N", N)->required();
        bias->add_option("p", p)->required();
        bias->add_option("--grid", bias_grid, "Number of frequency samples over [-pi, pi)");
        bias->add_option("--s", bias_s, "Normalization constant");
        bias->add_flag("--oracle", bias_oracle, "Add the DFT column; exit 3 if the two disagree");
        bias->add_option("--out", out_dir);

        auto *estimate = app.add_subcommand("estimate", "Correlogram spectral estimate from sub-Nyquist samples");
        detail::estimate_options eo;
        estimate->add_option("M", eo.M)->required();
        estimate->add_option("N", eo.N)->required();
        estimate->add_option("p", eo.p)->required();
        estimate->add_option("--freqs", eo.freqs, "Comma-separated tone frequencies in units of pi");
        estimate->add_option("--amps", eo.amps, "Comma-separated amplitudes (default all 1)");
        estimate->add_option("--snapshots", eo.snapshots, "Number of snapshots L");
        estimate->add_option("--seed", eo.seed, "Phase generator seed");
        estimate->add_option("--grid", eo.grid, "Number of frequency samples over [-pi, pi)");
        estimate->add_option("--input", eo.input, "Nyquist-rate samples as CSV (real,imag)");
        estimate->add_option("--peaks", eo.peaks, "Number of peaks to report");
        estimate->add_option("--normalization", eo.norm, "per-lag (default) or fixed")
            ->check(CLI::IsMember({"per-lag", "fixed"}));
        estimate->add_option("--out", out_dir);

        auto *replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
        std::string manifest_path, replay_out;
        replay->add_option("manifest", manifest_path)->required();
        replay->add_option("--out", replay_out, "Write to this directory instead of the recorded one");

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &e)
        {
            out << app.help();
            return ok;
        }
        catch (const CLI::CallForVersion &)
        {
            out << tool_version << "\n";
            return ok;
        }
        catch (const CLI::ParseError &e)
        {
            detail::report_error(err, "ParseError", e.what());
            return validation_error;
        }

        try
        {
            if (*design)
                return detail::cmd_design(ctx, M, N, design_p, out_dir);
            if (*weights)
                return detail::cmd_weights(ctx, M, N, p, weights_oracle, out_dir);
            if (*bias)
                return detail::cmd_bias(ctx, M, N, p, bias_grid, bias_s, bias_oracle, out_dir);
            if (*estimate)
                return detail::cmd_estimate(ctx, eo, out_dir);
            if (*replay)
                return detail::replay(ctx, manifest_path, replay_out);
        }
        catch (const error &e)
        {
            detail::report_error(err, e.name(), e.what());
            return validation_error;
        }
        catch (const csv::io_error &e)
        {
            detail::report_error(err, "IOError", e.what());
            return io_failure;
        }
        return validation_error;
    }
}

#endif
