/*
 * Copyright 2026 The gitmult Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

/**
 * @file cli.hpp
 * @brief The `gitmult` command line. Kept in a header so tests can drive it
 * with in-memory streams.
 *
 * Exit codes: 0 success or agreement, 1 disagreement or failed check,
 * 2 usage, parse or precondition errors.
 */

#include "classifier.hpp"
#include "forms.hpp"
#include "hesselink.hpp"
#include "report_json.hpp"
#include "statepoly.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gitmult {

namespace cli_detail {

inline HomogeneousForm read_form(std::string const& path)
{
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw Error("cannot open input file '" + path + "'");
        buf << in.rdbuf();
    }
    return parse_form(buf.str());
}

inline RationalVector parse_vector(std::string const& text)
{
    RationalVector out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t const comma = text.find(',', pos);
        std::string_view item(text.data() + pos, (comma == std::string::npos ? text.size() : comma) - pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        out.push_back(parse_rational(item));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

inline std::optional<int> parse_N(std::string const& text)
{
    if (text == "auto")
        return std::nullopt;
    int const n = detail::parse_int(text, "--N");
    if (n < 0)
        throw Error("--N must be >= 0 or 'auto'");
    return n;
}

inline std::string approx(Rational const& x)
{
    std::ostringstream os;
    os << to_string(x);
    if (x.get_den() != 1)
        os << " (≈ " << std::setprecision(6) << x.get_d() << ")";
    return os.str();
}

inline std::string join(RationalVector const& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

inline std::string join(std::vector<std::int64_t> const& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + std::to_string(v[i]);
    return s + ")";
}

inline void print_certificate(std::ostream& out, InstabilityCertificate const& c)
{
    out << "xi       = " << join(c.xi) << '\n';
    out << "q        = " << join(c.q) << '\n';
    out << "w        = " << join(c.w) << '\n';
    out << "delta^2  = " << approx(c.delta_sq) << '\n';
    if (c.lambda)
        out << "lambda   = " << join(c.lambda->weights()) << "  (lambda = " << to_string(c.scale) << " * w)\n";
    else
        out << "lambda   = none (torus-semistable)\n";
}

} // namespace cli_detail

/// Runs the command line on `args` (program name excluded).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    using namespace cli_detail;

    CLI::App app{"Exact GIT instability data and multiplicity classes of projective hypersurfaces", "gitmult"};
    app.require_subcommand(1);

    int r = 0;
    int d = 0;
    int m = -1;
    std::string n_text = "auto";
    std::string input;
    std::vector<std::string> points;
    std::uint64_t seed = 1;
    int count = 25;
    int budget = 1;
    unsigned jobs = 1;
    bool json = false;
    bool text = false;
    std::string out_dir;

    auto add_rd = [&](CLI::App* sub) {
        sub->add_option("-r", r, "ambient dimension of P^r")->required()->check(CLI::PositiveNumber);
        sub->add_option("-d", d, "degree")->required()->check(CLI::PositiveNumber);
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", input, "form file ('-' for stdin)")->required();
    };

    auto* mult = app.add_subcommand("mult", "multiplicity of a form at a point");
    add_input(mult);
    mult->add_option("--point", points, "point as comma-separated rationals")->required()->expected(1);
    mult->add_flag("--json", json);

    auto* index = app.add_subcommand("index", "torus instability certificate (JSON unless --text)");
    add_input(index);
    index->add_flag("--json", json);
    index->add_flag("--text", text);

    auto* destab = app.add_subcommand("destab", "multiply a form by (x_1 ... x_r)^N");
    add_input(destab);
    destab->add_option("--N", n_text, "exponent N")->required();
    destab->add_flag("--json", json);

    auto* threshold = app.add_subcommand("threshold", "separation threshold N_{r,d} and per-pair minima");
    add_rd(threshold);
    threshold->add_flag("--json", json);

    auto* bands = app.add_subcommand("bands", "band membership of a rational point");
    add_rd(bands);
    bands->add_option("--N", n_text, "N, or 'auto' for the threshold");
    bands->add_option("--m", m, "test only this band");
    bands->add_option("--point", points, "point y as comma-separated rationals")->required()->expected(1);
    bands->add_flag("--json", json);

    auto* classify = app.add_subcommand("classify", "multiplicity via band membership (JSON unless --text)");
    add_input(classify);
    classify->add_option("--point", points, "point to classify (default [1:0:...:0])")->expected(0, 1);
    classify->add_option("--N", n_text, "N, or 'auto' for the threshold");
    classify->add_flag("--json", json);
    classify->add_flag("--text", text);

    auto* verify = app.add_subcommand("verify", "classify a generated corpus for every m (JSON unless --text)");
    add_rd(verify);
    verify->add_option("--N", n_text, "N, or 'auto' for the threshold");
    verify->add_option("--count", count, "forms per multiplicity")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "corpus seed");
    verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    verify->add_flag("--json", json);
    verify->add_flag("--text", text);

    auto* gen = app.add_subcommand("gen", "emit corpus forms with multiplicity m at [1:0:...:0]");
    add_rd(gen);
    gen->add_option("--m", m, "multiplicity")->required();
    gen->add_option("--count", count, "number of forms")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "corpus seed");
    gen->add_option("--out", out_dir, "directory for form_NNN.form files (default: stdout)");

    auto* bound = app.add_subcommand("bound", "multiplicity bounds from a searched stratum label (JSON unless --text)");
    add_input(bound);
    bound->add_option("--point", points, "candidate point(s); the first seeds the frame family")->required();
    bound->add_option("--budget", budget, "entry bound of the unipotent frames")->check(CLI::NonNegativeNumber);
    bound->add_flag("--json", json);
    bound->add_flag("--text", text);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    bool const as_json = json || !text;
    try {
        if (mult->parsed()) {
            auto f = read_form(input);
            ProjPoint p(parse_vector(points.front()));
            int const value = multiplicity_at(f, p);
            if (json)
                out << Json{{"point", vector_json(p.coords())}, {"mult", value}}.dump() << '\n';
            else
                out << value << '\n';
            return 0;
        }
        if (index->parsed()) {
            auto cert = torus_index(read_form(input));
            if (as_json)
                out << to_json(cert).dump() << '\n';
            else
                print_certificate(out, cert);
            return 0;
        }
        if (destab->parsed()) {
            auto n = parse_N(n_text);
            if (!n)
                throw Error("destab needs a numeric --N");
            auto g = destabilize(read_form(input), *n);
            if (json)
                out << Json{{"form", format_form(g)}}.dump() << '\n';
            else
                out << format_form(g);
            return 0;
        }
        if (threshold->parsed()) {
            auto rep = threshold_report(r, d);
            if (json) {
                out << to_json(rep).dump() << '\n';
            } else {
                out << rep.threshold << '\n';
                out << "# pairs (m, m', least separating N):";
                for (auto const& p : rep.pairs)
                    out << " (" << p.m << ", " << p.m_prime << ", " << p.min_N << ")";
                out << '\n';
            }
            return 0;
        }
        if (bands->parsed()) {
            auto n = parse_N(n_text).value_or(separation_threshold(r, d));
            auto y = parse_vector(points.front());
            if (static_cast<int>(y.size()) != r + 1)
                throw Error("--point needs " + std::to_string(r + 1) + " coordinates");
            Json members = Json::array();
            for (int k = 0; k <= d; ++k) {
                if (m >= 0 && k != m)
                    continue;
                BandParams const p{r, d, n, k};
                bool const inside = band_contains(y, p);
                Rational const dsq = dist_sq(barycenter(r, p.level()), y);
                if (json)
                    members.push_back({{"m", k}, {"contains", inside}, {"dist_sq", rational_json(dsq)},
                                       {"l_sq", rational_json(l_squared(p))}});
                else
                    out << "B_" << k << ": " << (inside ? "contains" : "no") << "  |xi-y|^2 = " << approx(dsq)
                        << "  l^2 = " << approx(l_squared(p)) << '\n';
            }
            if (json)
                out << Json{{"r", r}, {"d", d}, {"N", n}, {"point", vector_json(y)}, {"q_contains", q_contains(y, r, d, n)},
                            {"bands", members}}
                           .dump()
                    << '\n';
            else
                out << "Q: " << (q_contains(y, r, d, n) ? "contains" : "no") << '\n';
            return 0;
        }
        if (classify->parsed()) {
            auto f = read_form(input);
            auto n = parse_N(n_text);
            auto rep = points.empty() ? classify_at_origin(f, n) : classify_at(f, ProjPoint(parse_vector(points.front())), n);
            if (as_json) {
                out << to_json(rep).dump() << '\n';
            } else {
                out << "N = " << rep.N << " (threshold " << rep.threshold_used << ")\n";
                print_certificate(out, rep.cert);
                out << "m_band   = " << (rep.m_band ? std::to_string(*rep.m_band) : "none") << '\n';
                out << "m_direct = " << rep.m_direct << '\n';
                out << "agreed   = " << (rep.agreed ? "yes" : "no") << '\n';
            }
            return rep.agreed ? 0 : 1;
        }
        if (verify->parsed()) {
            auto summary = verify_theorem_main(r, d, parse_N(n_text), count, seed, jobs);
            if (as_json) {
                out << to_json(summary).dump() << '\n';
            } else {
                out << "r=" << r << " d=" << d << " N=" << summary.N << ": " << summary.passed << "/" << summary.total
                    << " agreed\n";
                for (auto const& fail : summary.failures)
                    out << "FAIL m=" << fail.m << "\n" << fail.form;
            }
            return summary.ok() ? 0 : 1;
        }
        if (gen->parsed()) {
            auto corpus = gen_corpus(r, d, m, count, seed);
            if (out_dir.empty()) {
                for (std::size_t i = 0; i < corpus.size(); ++i)
                    out << (i ? "\n" : "") << "# form " << i << '\n' << format_form(corpus[i]);
            } else {
                std::filesystem::create_directories(out_dir);
                for (std::size_t i = 0; i < corpus.size(); ++i) {
                    std::ostringstream name;
                    name << "form_" << std::setw(3) << std::setfill('0') << i << ".form";
                    std::ofstream file(std::filesystem::path(out_dir) / name.str());
                    file << format_form(corpus[i]);
                }
                out << corpus.size() << " forms written to " << out_dir << '\n';
            }
            return 0;
        }
        if (bound->parsed()) {
            auto f = read_form(input);
            std::vector<ProjPoint> candidates;
            for (auto const& s : points)
                candidates.emplace_back(parse_vector(s));
            auto search = worst_frame_search(f, default_frames(f.r(), candidates.front(), budget));
            if (!search.cert.unstable()) {
                err << "bound: every searched frame is torus-semistable; no stratum label\n";
                return 1;
            }
            auto label = stratum_label(search.cert);
            auto res = bound_check(f, label, candidates);
            if (as_json) {
                Json j = to_json(res);
                j["label"] = to_json(label);
                out << j.dump() << '\n';
            } else {
                out << "label    = [" << join(label.lambda_rep.weights()) << "], delta^2 = " << approx(label.delta_sq)
                    << '\n';
                out << "bounds   = " << approx(res.lower) << " <= " << res.max_mult << " <= " << approx(res.upper) << '\n';
                out << "within   = " << (res.within ? "yes" : "no") << '\n';
            }
            return res.within ? 0 : 1;
        }
    } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (std::filesystem::filesystem_error const& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace gitmult
