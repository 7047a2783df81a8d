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
 * @file classifier.hpp
 * @brief Multiplicity classification from band membership of the torus
 * nearest point of a destabilized form, the multiplicity bounds attached to
 * a stratum label, and corpus-driven verification.
 */

#include "forms.hpp"
#include "hesselink.hpp"
#include "rational.hpp"
#include "statepoly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace gitmult {

struct BandDiagnostic {
    int m;
    Rational dist_sq;
    Rational l_sq;
    bool contains;
};

struct ClassificationReport {
    int r = 0;
    int d = 0;
    int N = 0;
    std::optional<int> m_band;
    int m_direct = 0;
    InstabilityCertificate cert;
    BandParams band_params;
    bool agreed = false;
    int threshold_used = 0;
    std::vector<int> matches;           ///< every m with q in B_m
    std::vector<BandDiagnostic> bands;  ///< filled only when no unique match
};

struct BoundCheckResult {
    Rational lower;
    Rational upper;
    int max_mult = 0;
    bool within = false;
};

/// Classifies the multiplicity of f at [1:0:...:0] from the band holding the
/// nearest point of the destabilized form. N = nullopt selects the threshold.
inline ClassificationReport classify_at_origin(HomogeneousForm const& f, std::optional<int> N = std::nullopt)
{
    int const threshold = separation_threshold(f.r(), f.d());
    int const n = N.value_or(threshold);
    if (n < threshold)
        throw Error("N=" + std::to_string(n) + " is below the separation threshold " + std::to_string(threshold) +
                    " for r=" + std::to_string(f.r()) + " d=" + std::to_string(f.d()));

    ClassificationReport rep;
    rep.r = f.r();
    rep.d = f.d();
    rep.N = n;
    rep.threshold_used = threshold;
    rep.cert = torus_index(destabilize(f, n));
    rep.m_direct = multiplicity_at_origin(f);
    for (int m = 0; m <= f.d(); ++m)
        if (band_contains(rep.cert.q, {f.r(), f.d(), n, m}))
            rep.matches.push_back(m);
    if (rep.matches.size() == 1)
        rep.m_band = rep.matches.front();
    else
        for (int m = 0; m <= f.d(); ++m) {
            BandParams const p{f.r(), f.d(), n, m};
            rep.bands.push_back({m, dist_sq(barycenter(f.r(), p.level()), rep.cert.q), l_squared(p),
                                 band_contains(rep.cert.q, p)});
        }
    rep.band_params = {f.r(), f.d(), n, rep.m_band.value_or(rep.m_direct)};
    rep.agreed = rep.m_band && *rep.m_band == rep.m_direct;
    return rep;
}

/// Moves p to [1:0:...:0] and classifies there.
inline ClassificationReport classify_at(HomogeneousForm const& f, ProjPoint const& p,
                                        std::optional<int> N = std::nullopt)
{
    if (p.size() != f.num_vars())
        throw Error("classify_at: point has wrong number of coordinates");
    return classify_at_origin(act(frame_moving_to_origin(p), f), N);
}

/**
 * Bounds on the maximal multiplicity implied by a stratum label of f:
 *
 *   (||lambda|| delta - a d) / (b - a)  <=  max mult  <=  r d/(r+1) - delta a / ||lambda||
 *
 * with a, b the least and greatest weights. Since lambda = scale * w and
 * |w| = delta, ||lambda|| delta = scale * delta^2 and delta / ||lambda|| = 1/scale.
 */
inline BoundCheckResult bound_check(HomogeneousForm const& f, StratumLabel const& label,
                                    std::vector<ProjPoint> const& candidate_points)
{
    if (label.delta_sq <= 0 || label.scale <= 0)
        throw Error("bound_check: label must come from an unstable certificate");
    if (candidate_points.empty())
        throw Error("bound_check: no candidate points");
    if (label.lambda_rep.size() != f.num_vars())
        throw Error("bound_check: label has wrong dimension");
    if (Rational(label.lambda_rep.norm_sq()) != label.scale * label.scale * label.delta_sq)
        throw Error("bound_check: label scale is inconsistent with delta and lambda");
    Rational const a = label.lambda_rep.min();
    Rational const b = label.lambda_rep.max();
    if (a == b)
        throw Error("bound_check: degenerate weights");

    BoundCheckResult res;
    res.lower = (label.scale * label.delta_sq - a * f.d()) / (b - a);
    res.upper = ratio(f.r() * f.d(), f.r() + 1) - a / label.scale;
    res.max_mult = 0;
    for (auto const& p : candidate_points)
        res.max_mult = std::max(res.max_mult, multiplicity_at(f, p));
    res.within = res.lower <= res.max_mult && res.max_mult <= res.upper;
    return res;
}

namespace detail {

/// Portable draws from mt19937_64 (std distributions are implementation-defined).
class CorpusRng {
public:
    explicit CorpusRng(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    /// Random composition of `total` into `parts` nonnegative integers.
    std::vector<int> composition(int total, int parts)
    {
        std::vector<int> cuts{0, total};
        for (int i = 0; i + 1 < parts; ++i)
            cuts.push_back(uniform(0, total));
        std::sort(cuts.begin(), cuts.end());
        std::vector<int> out;
        for (int i = 0; i < parts; ++i)
            out.push_back(cuts[i + 1] - cuts[i]);
        return out;
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t corpus_seed(std::uint64_t seed, int m)
{
    return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(m) + 1;
}

} // namespace detail

/// Forms with multiplicity exactly m at [1:0:...:0]: every term has
/// e_0 <= d - m and at least one has e_0 = d - m. Small integer coefficients.
inline std::vector<HomogeneousForm> gen_corpus(int r, int d, int m, int count, std::uint64_t seed)
{
    if (r < 1 || d < 1)
        throw Error("gen_corpus: need r >= 1 and d >= 1");
    if (m < 0 || m > d)
        throw Error("gen_corpus: need 0 <= m <= d");
    if (count < 1)
        throw Error("gen_corpus: count must be >= 1");
    detail::CorpusRng rng(detail::corpus_seed(seed, m));
    auto coeff = [&] {
        int c = rng.uniform(1, 3);
        return rng.uniform(0, 1) ? c : -c;
    };
    auto exponents = [&](int e0) {
        ExponentVector e{e0};
        for (int x : rng.composition(d - e0, r))
            e.push_back(x);
        return e;
    };
    std::vector<HomogeneousForm> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        TermMap terms;
        terms[exponents(d - m)] = coeff();
        int const extra = rng.uniform(0, 4);
        for (int t = 0; t < extra; ++t) {
            auto e = exponents(rng.uniform(0, d - m));
            terms.try_emplace(std::move(e), coeff());
        }
        out.emplace_back(r, d, std::move(terms));
    }
    return out;
}

struct VerifyFailure {
    int m;
    std::string form;
    std::optional<int> m_band;
};

struct VerifySummary {
    int r = 0;
    int d = 0;
    int N = 0;
    int count = 0;
    int total = 0;
    int passed = 0;
    std::vector<int> passed_by_m;
    std::vector<VerifyFailure> failures;

    bool ok() const { return passed == total; }
};

/// Runs classify_at_origin on count corpus forms for each m in 0..d.
inline VerifySummary verify_theorem_main(int r, int d, std::optional<int> N, int count, std::uint64_t seed,
                                         unsigned jobs = 1)
{
    int const threshold = separation_threshold(r, d);
    int const n = N.value_or(threshold);
    if (n < threshold)
        throw Error("N=" + std::to_string(n) + " is below the separation threshold " + std::to_string(threshold));

    struct Case {
        int m;
        HomogeneousForm f;
    };
    std::vector<Case> cases;
    for (int m = 0; m <= d; ++m)
        for (auto& f : gen_corpus(r, d, m, count, seed))
            cases.push_back({m, std::move(f)});

    std::vector<std::optional<int>> result(cases.size());
    std::vector<char> agreed(cases.size(), 0);
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < cases.size(); i += stride) {
            auto rep = classify_at_origin(cases[i].f, n);
            result[i] = rep.m_band;
            agreed[i] = rep.agreed && rep.m_direct == cases[i].m;
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(work, j, jobs);
    }

    VerifySummary summary{r, d, n, count, static_cast<int>(cases.size()), 0, std::vector<int>(d + 1, 0), {}};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (agreed[i]) {
            ++summary.passed;
            ++summary.passed_by_m[cases[i].m];
        } else {
            summary.failures.push_back({cases[i].m, format_form(cases[i].f), result[i]});
        }
    }
    return summary;
}

} // namespace gitmult
