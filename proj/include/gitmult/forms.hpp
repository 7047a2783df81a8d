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
 * @file forms.hpp
 * @brief Homogeneous forms over Q, the linear substitution action, point
 * multiplicities and the destabilization map f -> f * (x_1 ... x_r)^N.
 *
 * Conventions. A frame g acts on variables by g.x_i = sum_j g(j,i) x_j, so
 * act(g, f)(x) = f(g^T x) and act(g, act(h, f)) = act(g * h, f). Points move
 * by p -> (g^T)^{-1} p, which makes zero sets and multiplicities transport
 * compatibly: mult_{point_image(g,p)} act(g,f) = mult_p f.
 */

#include "rational.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gitmult {

/// Exponents (e_0, ..., e_r) of a monomial x_0^e_0 ... x_r^e_r.
using ExponentVector = std::vector<int>;

using TermMap = std::map<ExponentVector, Rational>;

/// A nonzero homogeneous form of degree d in the variables x_0..x_r.
class HomogeneousForm {
public:
    HomogeneousForm(int r, int d, TermMap terms) : r_(r), d_(d), terms_(std::move(terms))
    {
        if (r < 1)
            throw Error("form: r must be >= 1");
        if (d < 0)
            throw Error("form: degree must be >= 0");
        std::erase_if(terms_, [](auto const& kv) { return kv.second == 0; });
        if (terms_.empty())
            throw Error("form: the zero form is not a point of projective space");
        for (auto const& [e, c] : terms_) {
            if (static_cast<int>(e.size()) != r + 1)
                throw Error("form: exponent vector has length " + std::to_string(e.size()) +
                            ", expected " + std::to_string(r + 1));
            if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
                throw Error("form: negative exponent");
            if (std::accumulate(e.begin(), e.end(), 0) != d)
                throw Error("form: exponent sum " + std::to_string(std::accumulate(e.begin(), e.end(), 0)) +
                            " differs from degree " + std::to_string(d));
        }
    }

    /// The single monomial c * x^e.
    static HomogeneousForm monomial(ExponentVector e, Rational c = 1)
    {
        int const r = static_cast<int>(e.size()) - 1;
        int const d = std::accumulate(e.begin(), e.end(), 0);
        return HomogeneousForm(r, d, TermMap{{std::move(e), std::move(c)}});
    }

    int r() const { return r_; }
    int d() const { return d_; }
    int num_vars() const { return r_ + 1; }
    TermMap const& terms() const { return terms_; }

    std::vector<ExponentVector> support() const
    {
        std::vector<ExponentVector> out;
        out.reserve(terms_.size());
        for (auto const& kv : terms_)
            out.push_back(kv.first);
        return out;
    }

    friend bool operator==(HomogeneousForm const&, HomogeneousForm const&) = default;

private:
    int r_;
    int d_;
    TermMap terms_;
};

/// An invertible (r+1)x(r+1) rational matrix. Determinant need not be 1;
/// rescaling a form does not change its projective class.
class Frame {
public:
    using Matrix = std::vector<RationalVector>;

    explicit Frame(Matrix rows) : rows_(std::move(rows))
    {
        std::size_t const n = rows_.size();
        if (n == 0)
            throw Error("frame: empty matrix");
        for (auto const& row : rows_)
            if (row.size() != n)
                throw Error("frame: matrix is not square");
        if (determinant() == 0)
            throw Error("frame: singular matrix");
    }

    static Frame identity(int n)
    {
        Matrix m(n, RationalVector(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            m[i][i] = 1;
        return Frame(std::move(m));
    }

    /// Permutation frame with g(i, perm[i]) = 1, i.e. g.x_{perm[i]} = x_i.
    static Frame permutation(std::vector<int> const& perm)
    {
        int const n = static_cast<int>(perm.size());
        Matrix m(n, RationalVector(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            m[i][perm[i]] = 1;
        return Frame(std::move(m));
    }

    int size() const { return static_cast<int>(rows_.size()); }
    Rational const& operator()(int i, int j) const { return rows_[i][j]; }
    Matrix const& rows() const { return rows_; }

    Rational determinant() const
    {
        Matrix a = rows_;
        std::size_t const n = a.size();
        Rational det = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a[piv][col] == 0)
                ++piv;
            if (piv == n)
                return 0;
            if (piv != col) {
                std::swap(a[piv], a[col]);
                det = -det;
            }
            det *= a[col][col];
            for (std::size_t row = col + 1; row < n; ++row) {
                if (a[row][col] == 0)
                    continue;
                Rational factor = a[row][col] / a[col][col];
                for (std::size_t k = col; k < n; ++k)
                    a[row][k] -= factor * a[col][k];
            }
        }
        return det;
    }

    Frame transpose() const
    {
        Matrix t(rows_.size(), RationalVector(rows_.size()));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < rows_.size(); ++j)
                t[j][i] = rows_[i][j];
        return Frame(std::move(t));
    }

    Frame inverse() const
    {
        std::size_t const n = rows_.size();
        Matrix a = rows_;
        Matrix inv = identity(static_cast<int>(n)).rows_;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (a[piv][col] == 0)
                ++piv;
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            Rational const scale = a[col][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[col][k] /= scale;
                inv[col][k] /= scale;
            }
            for (std::size_t row = 0; row < n; ++row) {
                if (row == col || a[row][col] == 0)
                    continue;
                Rational factor = a[row][col];
                for (std::size_t k = 0; k < n; ++k) {
                    a[row][k] -= factor * a[col][k];
                    inv[row][k] -= factor * inv[col][k];
                }
            }
        }
        return Frame(std::move(inv));
    }

    RationalVector apply(RationalVector const& v) const
    {
        if (v.size() != rows_.size())
            throw Error("frame: dimension mismatch");
        RationalVector out(rows_.size(), Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < rows_.size(); ++j)
                out[i] += rows_[i][j] * v[j];
        return out;
    }

    friend Frame operator*(Frame const& a, Frame const& b)
    {
        std::size_t const n = a.rows_.size();
        if (b.rows_.size() != n)
            throw Error("frame: dimension mismatch");
        Matrix m(n, RationalVector(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (a.rows_[i][k] == 0)
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    m[i][j] += a.rows_[i][k] * b.rows_[k][j];
            }
        return Frame(std::move(m));
    }

    friend bool operator==(Frame const&, Frame const&) = default;

private:
    Matrix rows_;
};

/// A point of P^r in homogeneous coordinates.
class ProjPoint {
public:
    explicit ProjPoint(RationalVector coords) : coords_(std::move(coords))
    {
        if (coords_.size() < 2)
            throw Error("point: need at least two homogeneous coordinates");
        if (std::all_of(coords_.begin(), coords_.end(), [](Rational const& x) { return x == 0; }))
            throw Error("point: all coordinates are zero");
    }

    static ProjPoint origin(int r)
    {
        RationalVector c(r + 1, Rational(0));
        c[0] = 1;
        return ProjPoint(std::move(c));
    }

    int size() const { return static_cast<int>(coords_.size()); }
    RationalVector const& coords() const { return coords_; }

    /// Coprime integer representative whose first nonzero entry is positive.
    std::vector<Integer> primitive() const
    {
        Integer den_lcm = 1;
        for (auto const& c : coords_)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Integer> v;
        v.reserve(coords_.size());
        Integer g = 0;
        for (auto const& c : coords_) {
            Integer x = c.get_num() * (den_lcm / c.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            v.push_back(std::move(x));
        }
        auto first = std::find_if(v.begin(), v.end(), [](Integer const& x) { return x != 0; });
        if (*first < 0)
            g = -g;
        for (auto& x : v)
            x /= g;
        return v;
    }

    /// Equality in P^r: proportional coordinate vectors.
    friend bool operator==(ProjPoint const& a, ProjPoint const& b)
    {
        if (a.coords_.size() != b.coords_.size())
            return false;
        for (std::size_t i = 0; i < a.coords_.size(); ++i)
            for (std::size_t j = i + 1; j < a.coords_.size(); ++j)
                if (a.coords_[i] * b.coords_[j] != a.coords_[j] * b.coords_[i])
                    return false;
        return true;
    }

private:
    RationalVector coords_;
};

namespace detail {

inline void trim(std::string_view& s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
}

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline int parse_int(std::string_view s, std::string const& what)
{
    int value = 0;
    auto const* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw Error("malformed integer '" + std::string(s) + "' for " + what);
    return value;
}

using Poly = std::map<ExponentVector, Rational>;

inline Poly multiply(Poly const& a, Poly const& b)
{
    Poly out;
    for (auto const& [ea, ca] : a)
        for (auto const& [eb, cb] : b) {
            ExponentVector e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    std::erase_if(out, [](auto const& kv) { return kv.second == 0; });
    return out;
}

} // namespace detail

/// Parses the text form-file format:
///
///     r=<int> d=<int>
///     <coeff> <e_0> ... <e_r>      (one term per line, coeff is p or p/q)
///
/// '#' starts a comment. Duplicate exponent rows are summed; a monomial whose
/// net coefficient is zero is rejected.
inline HomogeneousForm parse_form(std::string_view text)
{
    std::optional<std::pair<int, int>> header;
    TermMap terms;
    std::vector<ExponentVector> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t const nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        detail::trim(line);
        if (line.empty())
            continue;
        auto const where = " (line " + std::to_string(line_no) + ")";
        auto tokens = detail::split_ws(line);
        if (!header) {
            if (tokens.size() != 2 || !tokens[0].starts_with("r=") || !tokens[1].starts_with("d="))
                throw Error("form header must read 'r=<int> d=<int>'" + where);
            int const r = detail::parse_int(tokens[0].substr(2), "r");
            int const d = detail::parse_int(tokens[1].substr(2), "d");
            if (r < 1 || d < 0)
                throw Error("form header requires r >= 1 and d >= 0" + where);
            header = {r, d};
            continue;
        }
        auto const [r, d] = *header;
        if (static_cast<int>(tokens.size()) != r + 2)
            throw Error("term needs a coefficient and " + std::to_string(r + 1) + " exponents" + where);
        Rational coeff;
        try {
            coeff = parse_rational(tokens[0]);
        } catch (Error const& e) {
            throw Error(e.what() + where);
        }
        ExponentVector e(r + 1);
        for (int i = 0; i <= r; ++i) {
            e[i] = detail::parse_int(tokens[i + 1], "exponent");
            if (e[i] < 0)
                throw Error("negative exponent" + where);
        }
        int const total = std::accumulate(e.begin(), e.end(), 0);
        if (total != d)
            throw Error("exponent sum " + std::to_string(total) + " differs from degree " + std::to_string(d) + where);
        terms[e] += coeff;
        seen.push_back(std::move(e));
    }
    if (!header)
        throw Error("form file is empty");
    if (seen.empty())
        throw Error("form has no terms");
    for (auto const& e : seen)
        if (terms.at(e) == 0)
            throw Error("a monomial has zero net coefficient");
    return HomogeneousForm(header->first, header->second, std::move(terms));
}

/// Inverse of parse_form; terms in ascending exponent order.
inline std::string format_form(HomogeneousForm const& f)
{
    std::ostringstream os;
    os << "r=" << f.r() << " d=" << f.d() << '\n';
    for (auto const& [e, c] : f.terms()) {
        os << to_string(c);
        for (int x : e)
            os << ' ' << x;
        os << '\n';
    }
    return os.str();
}

/// Substitutes x_i -> sum_j g(j,i) x_j and expands.
inline HomogeneousForm act(Frame const& g, HomogeneousForm const& f)
{
    int const n = f.num_vars();
    if (g.size() != n)
        throw Error("act: frame size " + std::to_string(g.size()) + " does not match " + std::to_string(n) +
                    " variables");
    // powers[i][k] = (g.x_i)^k
    std::vector<std::vector<detail::Poly>> powers(n);
    for (int i = 0; i < n; ++i) {
        detail::Poly linear;
        for (int j = 0; j < n; ++j) {
            if (g(j, i) == 0)
                continue;
            ExponentVector e(n, 0);
            e[j] = 1;
            linear[e] = g(j, i);
        }
        powers[i].push_back(detail::Poly{{ExponentVector(n, 0), Rational(1)}});
        for (int k = 1; k <= f.d(); ++k)
            powers[i].push_back(detail::multiply(powers[i].back(), linear));
    }
    detail::Poly out;
    for (auto const& [e, c] : f.terms()) {
        detail::Poly term{{ExponentVector(n, 0), c}};
        for (int i = 0; i < n; ++i)
            if (e[i] > 0)
                term = detail::multiply(term, powers[i][e[i]]);
        for (auto& [te, tc] : term)
            out[te] += tc;
    }
    return HomogeneousForm(f.r(), f.d(), std::move(out));
}

/// (g^T)^{-1} p.
inline ProjPoint point_image(Frame const& g, ProjPoint const& p)
{
    if (g.size() != p.size())
        throw Error("point_image: dimension mismatch");
    return ProjPoint(g.transpose().inverse().apply(p.coords()));
}

/**
 * Unimodular integer frame g (det = +1) with point_image(g, p) = [1:0:...:0].
 *
 * The first row of g is the primitive integer representative of p. It is
 * completed to a basis by integer column reduction of that row to e_0,
 * tracking the inverse of the accumulated column operations.
 */
inline Frame frame_moving_to_origin(ProjPoint const& p)
{
    std::vector<Integer> v = p.primitive();
    int const n = static_cast<int>(v.size());
    std::vector<std::vector<Integer>> inv(n, std::vector<Integer>(n, 0));
    for (int i = 0; i < n; ++i)
        inv[i][i] = 1;

    // column op "col i += k col j" on v; inverse row op "row j -= k row i"
    auto add_col = [&](int i, int j, Integer const& k) {
        v[i] += k * v[j];
        for (int c = 0; c < n; ++c)
            inv[j][c] -= k * inv[i][c];
    };
    auto nonzero_count = [&] { return std::count_if(v.begin(), v.end(), [](Integer const& x) { return x != 0; }); };

    while (nonzero_count() > 1) {
        int pivot = -1;
        for (int i = 0; i < n; ++i)
            if (v[i] != 0 && (pivot < 0 || abs(v[i]) < abs(v[pivot])))
                pivot = i;
        for (int i = 0; i < n; ++i) {
            if (i == pivot || v[i] == 0)
                continue;
            Integer q;
            mpz_tdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), v[pivot].get_mpz_t());
            add_col(i, pivot, Integer(-q));
        }
    }
    int const j = static_cast<int>(std::find_if(v.begin(), v.end(), [](Integer const& x) { return x != 0; }) - v.begin());
    if (j != 0) {
        std::swap(v[0], v[j]);
        std::swap(inv[0], inv[j]);
    }
    if (v[0] < 0) {
        v[0] = -v[0];
        for (auto& x : inv[0])
            x = -x;
    }

    Frame::Matrix rows(n, RationalVector(n));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c)
            rows[i][c] = Rational(inv[i][c]);
    Frame g(std::move(rows));
    if (g.determinant() < 0) {
        auto m = g.rows();
        for (auto& x : m[1])
            x = -x;
        g = Frame(std::move(m));
    }
    return g;
}

/// Multiplicity of the hypersurface f = 0 at [1:0:...:0], i.e. d - max e_0.
inline int multiplicity_at_origin(HomogeneousForm const& f)
{
    int max_e0 = 0;
    for (auto const& kv : f.terms())
        max_e0 = std::max(max_e0, kv.first[0]);
    return f.d() - max_e0;
}

inline int multiplicity_at(HomogeneousForm const& f, ProjPoint const& p)
{
    if (p.size() != f.num_vars())
        throw Error("multiplicity_at: point has wrong number of coordinates");
    return multiplicity_at_origin(act(frame_moving_to_origin(p), f));
}

/// f * (x_1 ... x_r)^N, a form of degree d + rN.
inline HomogeneousForm destabilize(HomogeneousForm const& f, int N)
{
    if (N < 0)
        throw Error("destabilize: N must be >= 0");
    TermMap out;
    for (auto const& [e, c] : f.terms()) {
        ExponentVector shifted = e;
        for (int i = 1; i <= f.r(); ++i)
            shifted[i] += N;
        out.emplace(std::move(shifted), c);
    }
    return HomogeneousForm(f.r(), f.d() + f.r() * N, std::move(out));
}

/// Binomial C(n, k) with C(n, k) = 0 whenever n < k or n < 0.
inline Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || n < k)
        return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// P_{r,d}(t) = C(r+t, r) - C(r+t-d, r).
inline Integer hilbert_poly_value(int r, int d, long t)
{
    if (r < 1 || d < 1)
        throw Error("hilbert_poly_value: r and d must be >= 1");
    return binomial(r + t, r) - binomial(r + t - d, r);
}

} // namespace gitmult
