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
 * @file statepoly.hpp
 * @brief State polytopes (Newton polytopes of forms), exact projection of a
 * point onto their convex hull, and the torus instability certificate.
 *
 * Distances are carried squared; no square root is ever taken. The
 * 1-parameter subgroup attached to a certificate is the primitive integer
 * vector positively proportional to the distance vector w = q - xi, with the
 * proportionality factor kept as `scale` (lambda = scale * w).
 */

#include "forms.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace gitmult {

/// Convex hull of finitely many points sharing one coordinate sum.
class StatePolytope {
public:
    explicit StatePolytope(std::vector<RationalVector> points)
    {
        if (points.empty())
            throw Error("state polytope: no points");
        std::size_t const dim = points.front().size();
        Rational const level = sum(points.front());
        std::set<RationalVector, std::less<>> unique;
        for (auto& p : points) {
            if (p.size() != dim)
                throw Error("state polytope: points of different lengths");
            if (sum(p) != level)
                throw Error("state polytope: points do not share a coordinate sum");
            if (unique.insert(p).second)
                points_.push_back(std::move(p));
        }
    }

    static StatePolytope of(HomogeneousForm const& f) { return from_exponents(f.support()); }

    static StatePolytope from_exponents(std::vector<ExponentVector> const& support)
    {
        std::vector<RationalVector> pts;
        pts.reserve(support.size());
        for (auto const& e : support)
            pts.emplace_back(e.begin(), e.end());
        return StatePolytope(std::move(pts));
    }

    std::vector<RationalVector> const& points() const { return points_; }
    std::size_t dim() const { return points_.front().size(); }

private:
    std::vector<RationalVector> points_;
};

struct HullWeight {
    RationalVector point;
    Rational weight;

    friend bool operator==(HullWeight const&, HullWeight const&) = default;
};

struct Projection {
    RationalVector q;
    Rational dist_sq;
    std::vector<HullWeight> hull_weights;
};

/// (d/(r+1), ..., d/(r+1)).
inline RationalVector barycenter(int r, int d)
{
    if (r < 1 || d < 0)
        throw Error("barycenter: need r >= 1, d >= 0");
    return RationalVector(r + 1, ratio(d, r + 1));
}

namespace detail {

/// Solves a square system exactly; returns nullopt when singular.
inline std::optional<RationalVector> solve(std::vector<RationalVector> a, RationalVector b)
{
    std::size_t const n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0)
                continue;
            Rational factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k)
                a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        b[i] /= a[i][i];
    return b;
}

/// Weights alpha (sum 1) of the min-norm point of the affine hull of `pts`.
inline RationalVector affine_minimizer(std::vector<RationalVector const*> const& pts)
{
    std::size_t const k = pts.size();
    std::vector<RationalVector> sys(k + 1, RationalVector(k + 1, Rational(0)));
    RationalVector rhs(k + 1, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            sys[i][j] = dot(*pts[i], *pts[j]);
            sys[j][i] = sys[i][j];
        }
        sys[i][k] = 1;
        sys[k][i] = 1;
    }
    rhs[k] = 1;
    auto sol = solve(std::move(sys), std::move(rhs));
    if (!sol)
        throw Error("nearest_point: affinely dependent active set");
    sol->pop_back();
    return *sol;
}

} // namespace detail

/**
 * Nearest point of conv(points) to t, by Wolfe's minimum-norm-point method
 * run in exact arithmetic on the translated points p - t.
 *
 * On return, for every point v: <t - q, v - q> <= 0, and q is the convex
 * combination recorded in hull_weights.
 */
inline Projection nearest_point(StatePolytope const& poly, RationalVector const& t)
{
    if (t.size() != poly.dim())
        throw Error("nearest_point: dimension mismatch");
    std::size_t const n = poly.points().size();
    std::size_t const dim = t.size();

    std::vector<RationalVector> shifted(n, RationalVector(dim));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < dim; ++c)
            shifted[i][c] = poly.points()[i][c] - t[c];

    auto combine = [&](std::vector<std::size_t> const& idx, RationalVector const& w) {
        RationalVector x(dim, Rational(0));
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t c = 0; c < dim; ++c)
                x[c] += w[k] * shifted[idx[k]][c];
        return x;
    };

    std::size_t start = 0;
    Rational best = norm_sq(shifted[0]);
    for (std::size_t i = 1; i < n; ++i)
        if (Rational v = norm_sq(shifted[i]); v < best) {
            best = v;
            start = i;
        }

    std::vector<std::size_t> active{start};
    RationalVector lambda{Rational(1)};
    RationalVector x = shifted[start];

    for (;;) {
        Rational const xx = norm_sq(x);
        std::size_t entering = n;
        Rational lowest = xx;
        for (std::size_t i = 0; i < n; ++i)
            if (Rational v = dot(x, shifted[i]); v < lowest) {
                lowest = v;
                entering = i;
            }
        if (entering == n)
            break;
        active.push_back(entering);
        lambda.push_back(0);

        for (;;) {
            std::vector<RationalVector const*> pts;
            for (auto i : active)
                pts.push_back(&shifted[i]);
            RationalVector alpha = detail::affine_minimizer(pts);
            if (std::all_of(alpha.begin(), alpha.end(), [](Rational const& a) { return a > 0; })) {
                lambda = std::move(alpha);
                x = combine(active, lambda);
                break;
            }
            std::optional<Rational> theta;
            for (std::size_t k = 0; k < alpha.size(); ++k)
                if (alpha[k] <= 0) {
                    Rational ratio = lambda[k] / (lambda[k] - alpha[k]);
                    if (!theta || ratio < *theta)
                        theta = ratio;
                }
            for (std::size_t k = 0; k < alpha.size(); ++k)
                lambda[k] = *theta * alpha[k] + (1 - *theta) * lambda[k];
            std::vector<std::size_t> kept_idx;
            RationalVector kept_w;
            for (std::size_t k = 0; k < active.size(); ++k)
                if (lambda[k] > 0) {
                    kept_idx.push_back(active[k]);
                    kept_w.push_back(lambda[k]);
                }
            active = std::move(kept_idx);
            lambda = std::move(kept_w);
            x = combine(active, lambda);
        }
    }

    Projection out;
    out.q.resize(dim);
    for (std::size_t c = 0; c < dim; ++c)
        out.q[c] = x[c] + t[c];
    out.dist_sq = norm_sq(x);
    for (std::size_t k = 0; k < active.size(); ++k)
        out.hull_weights.push_back({poly.points()[active[k]], lambda[k]});
    return out;
}

/// Diagonal 1-parameter subgroup of SL_{r+1}: a primitive, nonzero,
/// zero-sum integer weight vector.
class OneParamSubgroup {
public:
    explicit OneParamSubgroup(std::vector<std::int64_t> weights) : a_(std::move(weights))
    {
        if (a_.size() < 2)
            throw Error("1-PS: need at least two weights");
        if (std::all_of(a_.begin(), a_.end(), [](auto x) { return x == 0; }))
            throw Error("1-PS: zero weight vector");
        std::int64_t s = 0;
        std::int64_t g = 0;
        for (auto x : a_) {
            s += x;
            g = std::gcd(g, x);
        }
        if (s != 0)
            throw Error("1-PS: weights must sum to zero");
        if (g != 1)
            throw Error("1-PS: weights are not primitive");
    }

    /// The primitive integer vector positively proportional to a nonzero
    /// rational vector, and the factor c with result = c * v.
    static std::pair<OneParamSubgroup, Rational> direction_of(RationalVector const& v)
    {
        Integer den = 1;
        for (auto const& x : v)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> ints;
        Integer g = 0;
        for (auto const& x : v) {
            ints.push_back(x.get_num() * (den / x.get_den()));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
        }
        if (g == 0)
            throw Error("1-PS: zero direction");
        std::vector<std::int64_t> a;
        for (auto& x : ints) {
            x /= g;
            if (!x.fits_slong_p())
                throw Error("1-PS: weight exceeds 64-bit range");
            a.push_back(x.get_si());
        }
        return {OneParamSubgroup(std::move(a)), ratio(den, g)};
    }

    std::vector<std::int64_t> const& weights() const { return a_; }
    int size() const { return static_cast<int>(a_.size()); }
    std::int64_t min() const { return *std::min_element(a_.begin(), a_.end()); }
    std::int64_t max() const { return *std::max_element(a_.begin(), a_.end()); }

    /// ||lambda||^2 = sum a_i^2.
    Integer norm_sq() const
    {
        Integer s = 0;
        for (auto x : a_)
            s += Integer(static_cast<long>(x)) * Integer(static_cast<long>(x));
        return s;
    }

    friend bool operator==(OneParamSubgroup const&, OneParamSubgroup const&) = default;

private:
    std::vector<std::int64_t> a_;
};

/// Torus instability data of a form at the identity frame.
struct InstabilityCertificate {
    RationalVector xi;
    RationalVector q;
    RationalVector w;  ///< q - xi
    Rational delta_sq; ///< |w|^2
    std::optional<OneParamSubgroup> lambda;
    Rational scale; ///< lambda = scale * w; zero when lambda is absent
    std::vector<HullWeight> hull_weights;

    bool unstable() const { return delta_sq > 0; }
};

inline InstabilityCertificate torus_index(HomogeneousForm const& f)
{
    InstabilityCertificate cert;
    cert.xi = barycenter(f.r(), f.d());
    auto proj = nearest_point(StatePolytope::of(f), cert.xi);
    cert.q = std::move(proj.q);
    cert.delta_sq = std::move(proj.dist_sq);
    cert.hull_weights = std::move(proj.hull_weights);
    cert.w.resize(cert.q.size());
    for (std::size_t i = 0; i < cert.q.size(); ++i)
        cert.w[i] = cert.q[i] - cert.xi[i];
    cert.scale = 0;
    if (cert.delta_sq > 0) {
        auto [lambda, scale] = OneParamSubgroup::direction_of(cert.w);
        cert.lambda = std::move(lambda);
        cert.scale = std::move(scale);
    }
    return cert;
}

/// Hilbert-Mumford weight of f for the diagonal 1-PS with weights a:
/// the minimum of <a, e> over the support.
inline std::int64_t mu_weight(HomogeneousForm const& f, std::vector<std::int64_t> const& a)
{
    if (static_cast<int>(a.size()) != f.num_vars())
        throw Error("mu_weight: weight vector has wrong length");
    if (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; }))
        throw Error("mu_weight: zero weight vector");
    std::int64_t s = 0;
    for (auto x : a)
        s += x;
    if (s != 0)
        throw Error("mu_weight: weights must sum to zero");
    std::optional<std::int64_t> lowest;
    for (auto const& kv : f.terms()) {
        std::int64_t v = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            v += a[i] * kv.first[i];
        if (!lowest || v < *lowest)
            lowest = v;
    }
    return *lowest;
}

/// Weyl-group representative: weights sorted non-increasing.
inline OneParamSubgroup class_rep(OneParamSubgroup const& lambda)
{
    auto a = lambda.weights();
    std::sort(a.begin(), a.end(), std::greater<>());
    return OneParamSubgroup(std::move(a));
}

} // namespace gitmult
