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

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gitmult {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The reduced fraction n/d (d != 0).
inline Rational ratio(Integer const& n, Integer const& d)
{
    Rational value(n, d);
    value.canonicalize();
    return value;
}

/// Parses "p" or "p/q" (optional sign on p, q > 0). Whitespace is not allowed.
inline Rational parse_rational(std::string_view text)
{
    auto const bad = [&] { return Error("malformed rational '" + std::string(text) + "'"); };
    if (text.empty())
        throw bad();
    auto const slash = text.find('/');
    auto const digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw bad();
    if (num.front() == '+')
        num.remove_prefix(1);
    Integer p(std::string(num), 10);
    Integer q(std::string(den), 10);
    if (q == 0)
        throw bad();
    return ratio(p, q);
}

/// Exact string form: "p" for integers, "p/q" otherwise.
inline std::string to_string(Rational const& value) { return value.get_str(); }

inline std::string to_string(Integer const& value) { return value.get_str(); }

inline Rational dot(std::span<Rational const> a, std::span<Rational const> b)
{
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

inline Rational norm_sq(std::span<Rational const> a) { return dot(a, a); }

inline Rational dist_sq(std::span<Rational const> a, std::span<Rational const> b)
{
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

inline Rational sum(std::span<Rational const> a)
{
    Rational acc = 0;
    for (auto const& x : a)
        acc += x;
    return acc;
}

/// Largest integer not exceeding x.
inline Integer floor_of(Rational const& x)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

} // namespace gitmult
