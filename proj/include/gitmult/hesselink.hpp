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
 * @file hesselink.hpp
 * @brief Band geometry for destabilized forms of degree d + rN.
 *
 * All regions live in the hyperplane sum(y) = d + rN of R^{r+1}, centred at
 * xi = (d + rN)/(r + 1) * (1, ..., 1):
 *
 *   Q        = { y : y_0 >= 0, y_i >= N for i >= 1 }
 *   l_m^2    = |xi - (d - m, N + m, N, ..., N)|^2
 *   B_m      = { y >= 0 : |xi - y|^2 <= l_m^2, y_0 <= d - m }
 *
 * A form with multiplicity m at [1:0:...:0] has, after multiplication by
 * (x_1 ... x_r)^N, its torus nearest point inside B_m. For N at or above
 * separation_threshold(r, d) the bands are pairwise disjoint, so that point
 * recovers m.
 */

#include "forms.hpp"
#include "rational.hpp"
#include "statepoly.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace gitmult {

struct BandParams {
    int r = 1;
    int d = 1;
    int N = 0;
    int m = 0;

    void validate() const
    {
        if (r < 1 || d < 1)
            throw Error("band: need r >= 1 and d >= 1");
        if (N < 0)
            throw Error("band: need N >= 0");
        if (m < 0 || m > d)
            throw Error("band: need 0 <= m <= d");
    }

    int level() const { return d + r * N; }

    friend bool operator==(BandParams const&, BandParams const&) = default;
};

/// Hesselink stratum label ([lambda], delta) with delta kept squared.
struct StratumLabel {
    OneParamSubgroup lambda_rep; ///< sorted non-increasing
    Rational delta_sq;
    Rational scale; ///< lambda = scale * w, hence delta / ||lambda|| = 1 / scale

    friend bool operator==(StratumLabel const&, StratumLabel const&) = default;
};

inline StratumLabel stratum_label(InstabilityCertificate const& cert)
{
    if (!cert.lambda)
        throw Error("stratum label: certificate is torus-semistable");
    return {class_rep(*cert.lambda), cert.delta_sq, cert.scale};
}

namespace detail {

inline void check_length(RationalVector const& y, int r)
{
    if (static_cast<int>(y.size()) != r + 1)
        throw Error("point has " + std::to_string(y.size()) + " coordinates, expected " + std::to_string(r + 1));
}

} // namespace detail

inline bool q_contains(RationalVector const& y, int r, int d, int N)
{
    detail::check_length(y, r);
    if (sum(y) != d + r * N || y[0] < 0)
        return false;
    for (int i = 1; i <= r; ++i)
        if (y[i] < N)
            return false;
    return true;
}

inline Rational l_squared(BandParams const& p)
{
    p.validate();
    RationalVector const xi = barycenter(p.r, p.level());
    RationalVector corner(p.r + 1, Rational(p.N));
    corner[0] = p.d - p.m;
    corner[1] = p.m + p.N;
    return dist_sq(xi, corner);
}

inline bool band_contains(RationalVector const& y, BandParams const& p)
{
    p.validate();
    detail::check_length(y, p.r);
    if (std::any_of(y.begin(), y.end(), [](Rational const& x) { return x < 0; }))
        return false;
    if (sum(y) != p.level())
        return false;
    if (y[0] > p.d - p.m)
        return false;
    return dist_sq(barycenter(p.r, p.level()), y) <= l_squared(p);
}

/// |z_N - xi|^2 - l_m^2 where z_N = (d - m', N + m'/r, ..., N + m'/r) is the
/// point of the slice y_0 = d - m' closest to xi. Linear in N.
inline Rational separation_gap(int r, int d, int N, int m, int m_prime)
{
    RationalVector const xi = barycenter(r, d + r * N);
    RationalVector z(r + 1, Rational(N) + ratio(m_prime, r));
    z[0] = d - m_prime;
    return dist_sq(z, xi) - l_squared({r, d, N, m});
}

/// Least N >= 1 with l_m^2 < |z_N - xi|^2.
inline int pair_separation_min_N(int r, int d, int m, int m_prime)
{
    if (r < 1 || d < 1)
        throw Error("separation: need r >= 1 and d >= 1");
    if (!(0 <= m && m < m_prime && m_prime <= d))
        throw Error("separation: need 0 <= m < m' <= d");
    Rational const at0 = separation_gap(r, d, 0, m, m_prime);
    Rational const slope = separation_gap(r, d, 1, m, m_prime) - at0;
    if (slope != 2 * (m_prime - m))
        throw Error("separation: gap is not linear with slope 2(m' - m)");
    if (at0 > 0)
        return 1;
    // at0 + slope * N > 0  <=>  N > -at0 / slope
    Integer n = floor_of(Rational(-at0 / slope)) + 1;
    return std::max(1, static_cast<int>(n.get_si()));
}

struct PairThreshold {
    int m;
    int m_prime;
    int min_N;
};

struct ThresholdReport {
    int r;
    int d;
    int threshold;
    std::vector<PairThreshold> pairs;
};

inline ThresholdReport threshold_report(int r, int d)
{
    ThresholdReport rep{r, d, d + 1, {}};
    for (int m = 0; m <= d; ++m)
        for (int mp = m + 1; mp <= d; ++mp) {
            int const n = pair_separation_min_N(r, d, m, mp);
            rep.pairs.push_back({m, mp, n});
            rep.threshold = std::max(rep.threshold, n);
        }
    return rep;
}

/// Smallest N > d at which every pair of bands is separated.
inline int separation_threshold(int r, int d) { return threshold_report(r, d).threshold; }

struct FrameSearchResult {
    Frame best;
    std::size_t best_index;
    InstabilityCertificate cert;
};

/// Maximizes the torus distance of act(g, f) over a finite frame family.
/// The result is a lower bound on the Kempf index of f; ties keep the first.
inline FrameSearchResult worst_frame_search(HomogeneousForm const& f, std::vector<Frame> const& frames)
{
    if (frames.empty())
        throw Error("frame search: empty frame family");
    std::optional<FrameSearchResult> best;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        auto cert = torus_index(act(frames[i], f));
        if (!best || cert.delta_sq > best->cert.delta_sq)
            best.emplace(FrameSearchResult{frames[i], i, std::move(cert)});
    }
    return std::move(*best);
}

/**
 * Frames L * P * M where M = frame_moving_to_origin(p), P permutes
 * x_1..x_r, and L is lower unitriangular with entries in [-budget, budget].
 * Every member sends p to [1:0:...:0]. The mover comes first.
 */
inline std::vector<Frame> default_frames(int r, ProjPoint const& p, int budget)
{
    if (budget < 0)
        throw Error("default_frames: budget must be >= 0");
    if (p.size() != r + 1)
        throw Error("default_frames: point has wrong number of coordinates");
    int const n = r + 1;
    Frame const mover = frame_moving_to_origin(p);

    std::vector<std::pair<int, int>> slots;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j)
            slots.emplace_back(i, j);

    std::vector<Frame> out{mover};
    std::set<Frame::Matrix> seen{mover.rows()};
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Frame const pm = Frame::permutation(perm) * mover;
        std::vector<int> entry(slots.size(), -budget);
        for (;;) {
            Frame::Matrix lower = Frame::identity(n).rows();
            for (std::size_t s = 0; s < slots.size(); ++s)
                lower[slots[s].first][slots[s].second] = entry[s];
            Frame g = Frame(std::move(lower)) * pm;
            if (seen.insert(g.rows()).second)
                out.push_back(std::move(g));
            std::size_t s = 0;
            while (s < entry.size() && entry[s] == budget)
                entry[s++] = -budget;
            if (s == entry.size())
                break;
            ++entry[s];
        }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return out;
}

/**
 * Class-level band test for a stratum label at level d + rN: some placement
 * of the weights, translated to xi + lambda / scale, lies in B_m. B is
 * symmetric in coordinates 1..r, so only the entry sent to coordinate 0
 * matters.
 */
inline bool label_in_band(StratumLabel const& label, BandParams const& p)
{
    p.validate();
    auto const& a = label.lambda_rep.weights();
    if (static_cast<int>(a.size()) != p.r + 1)
        throw Error("label_in_band: label has wrong dimension");
    RationalVector const xi = barycenter(p.r, p.level());
    std::set<std::int64_t> tried;
    for (std::size_t lead = 0; lead < a.size(); ++lead) {
        if (!tried.insert(a[lead]).second)
            continue;
        RationalVector y(a.size());
        y[0] = xi[0] + Rational(a[lead]) / label.scale;
        std::size_t k = 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != lead) {
                y[k] = xi[k] + Rational(a[i]) / label.scale;
                ++k;
            }
        if (band_contains(y, p))
            return true;
    }
    return false;
}

} // namespace gitmult
