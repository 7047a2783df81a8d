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
#include "oracles.hpp"

#include <gitmult/forms.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace gitmult;

namespace {

HomogeneousForm cubic() { return parse_form("r=2 d=3\n1 1 1 1\n1 0 3 0\n"); } // x0x1x2 + x1^3

Frame swap2() { return Frame::permutation({1, 0}); }

ProjPoint pt(std::initializer_list<int> c)
{
    RationalVector v;
    for (int x : c)
        v.emplace_back(x);
    return ProjPoint(std::move(v));
}

} // namespace

TEST(ParseForm, SimpleMonomial)
{
    auto f = parse_form("r=1 d=2\n1 0 2");
    EXPECT_EQ(f, HomogeneousForm::monomial({0, 2}));
}

TEST(ParseForm, RationalCoefficientsAndComments)
{
    auto f = parse_form("# a plane cubic\nr=2 d=3\n1 1 1 1   # x0 x1 x2\n-2/3 0 3 0\n\n");
    TermMap expected{{{1, 1, 1}, Rational(1)}, {{0, 3, 0}, Rational(-2, 3)}};
    EXPECT_EQ(f, HomogeneousForm(2, 3, expected));
}

TEST(ParseForm, DuplicatesAreSummed)
{
    auto f = parse_form("r=1 d=1\n1/2 1 0\n1/2 1 0\n3 0 1");
    EXPECT_EQ(f.terms().at({1, 0}), 1);
}

TEST(ParseForm, Errors)
{
    EXPECT_THROW(parse_form("r=1 d=2\n1 0 3"), Error);           // exponent sum
    EXPECT_THROW(parse_form("r=1 d=2\n"), Error);                // no terms
    EXPECT_THROW(parse_form("r=1 d=2\n1 -1 3"), Error);          // negative exponent
    EXPECT_THROW(parse_form("r=1 d=2\n1/0 0 2"), Error);         // malformed rational
    EXPECT_THROW(parse_form("r=1 d=2\n1.5 0 2"), Error);         // malformed rational
    EXPECT_THROW(parse_form("r=1 d=2\n1 0 2\n-1 0 2"), Error);   // zero net coefficient
    EXPECT_THROW(parse_form("r=1 d=2\n1 0 1 1"), Error);         // token count
    EXPECT_THROW(parse_form("d=2 r=1\n1 0 2"), Error);           // header
    EXPECT_THROW(parse_form(""), Error);
}

TEST(ParseForm, FormatRoundTrip)
{
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        auto f = oracle::random_form(rng, 1 + k % 3, 1 + k % 5, 6);
        EXPECT_EQ(parse_form(format_form(f)), f);
    }
}

TEST(Act, IdentityIsTrivial)
{
    auto f = cubic();
    EXPECT_EQ(act(Frame::identity(3), f), f);
}

TEST(Act, SwapExchangesVariables)
{
    EXPECT_EQ(act(swap2(), HomogeneousForm::monomial({0, 2})), HomogeneousForm::monomial({2, 0}));
}

TEST(Act, ShearExpandsSubstitution)
{
    // g.x0 = x0 + x1, g.x1 = x1
    Frame g({{1, 0}, {1, 1}});
    TermMap expected{{{1, 1}, Rational(1)}, {{0, 2}, Rational(1)}};
    EXPECT_EQ(act(g, HomogeneousForm::monomial({1, 1})), HomogeneousForm(1, 2, expected));
}

TEST(Act, CompositionConvention)
{
    // act(g, act(h, f)) = act(g * h, f); g and h do not commute
    Frame g({{1, 0}, {1, 1}});
    Frame h({{1, 2}, {0, 1}});
    ASSERT_NE(g * h, h * g);
    auto f = parse_form("r=1 d=3\n1 3 0\n2 1 2\n-1 0 3");
    EXPECT_EQ(act(g, act(h, f)), act(g * h, f));
    EXPECT_NE(act(g, act(h, f)), act(h * g, f));
}

TEST(Act, Errors)
{
    EXPECT_THROW(act(Frame::identity(3), HomogeneousForm::monomial({0, 2})), Error);
    EXPECT_THROW(Frame({{1, 2}, {2, 4}}), Error);
}

TEST(PointImage, Basics)
{
    EXPECT_EQ(point_image(Frame::identity(3), pt({1, 2, 3})), pt({1, 2, 3}));
    EXPECT_EQ(point_image(swap2(), pt({1, 0})), pt({0, 1}));
    EXPECT_THROW(point_image(Frame::identity(3), pt({1, 0})), Error);
}

TEST(PointImage, TransportsMultiplicity)
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        int const r = 1 + k % 3;
        auto f = oracle::random_form(rng, r, 1 + k % 4, 5);
        auto g = oracle::random_unimodular(rng, r + 1);
        auto p = oracle::random_point(rng, r + 1);
        auto gp = point_image(g, p);
        EXPECT_EQ(oracle::multiplicity(act(g, f), gp.coords()), oracle::multiplicity(f, p.coords()));
        EXPECT_EQ(multiplicity_at(act(g, f), gp), multiplicity_at(f, p));
    }
}

TEST(FrameMovingToOrigin, IdentityForOrigin)
{
    EXPECT_EQ(frame_moving_to_origin(ProjPoint::origin(3)), Frame::identity(4));
}

TEST(FrameMovingToOrigin, SendsPointToOrigin)
{
    EXPECT_EQ(point_image(frame_moving_to_origin(pt({0, 1})), pt({0, 1})), ProjPoint::origin(1));
    auto g = frame_moving_to_origin(pt({1, 1, 1}));
    EXPECT_EQ(g.determinant(), 1);
    EXPECT_EQ(point_image(g, pt({1, 1, 1})), ProjPoint::origin(2));
    auto f = cubic();
    EXPECT_EQ(multiplicity_at_origin(act(g, f)), oracle::multiplicity(f, {1, 1, 1}));
}

TEST(FrameMovingToOrigin, UnimodularOnRandomPoints)
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        int const n = 2 + k % 4;
        RationalVector c;
        for (int i = 0; i < n; ++i)
            c.emplace_back(static_cast<int>(rng() % 41) - 20, 1 + static_cast<int>(rng() % 5));
        if (std::all_of(c.begin(), c.end(), [](Rational const& x) { return x == 0; }))
            continue;
        ProjPoint p(c);
        auto g = frame_moving_to_origin(p);
        EXPECT_EQ(g.determinant(), 1);
        for (auto const& row : g.rows())
            for (auto const& x : row)
                EXPECT_EQ(x.get_den(), 1);
        EXPECT_EQ(point_image(g, p), ProjPoint::origin(n - 1));
    }
}

TEST(Multiplicity, AtOrigin)
{
    EXPECT_EQ(multiplicity_at_origin(HomogeneousForm::monomial({4, 0, 0})), 0);
    EXPECT_EQ(multiplicity_at_origin(HomogeneousForm::monomial({0, 3, 0})), 3);
    EXPECT_EQ(multiplicity_at_origin(cubic()), 2);
}

TEST(Multiplicity, AtPoint)
{
    EXPECT_EQ(multiplicity_at(cubic(), pt({1, 0, 0})), 2);
    EXPECT_EQ(multiplicity_at(cubic(), pt({1, 1, 1})), 0); // f(1,1,1) = 2
    EXPECT_EQ(multiplicity_at(HomogeneousForm::monomial({2, 0}), pt({0, 1})), 2);
    EXPECT_EQ(oracle::multiplicity(HomogeneousForm::monomial({2, 0}), {0, 1}), 2);
}

TEST(Multiplicity, MatchesDehomogenizedOracle)
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        int const r = 1 + k % 3;
        auto f = oracle::random_form(rng, r, 1 + k % 5, 6);
        auto p = oracle::random_point(rng, r + 1);
        int const m = multiplicity_at(f, p);
        EXPECT_EQ(m, oracle::multiplicity(f, p.coords()));
        EXPECT_GE(m, 0);
        EXPECT_LE(m, f.d());
    }
}

TEST(Multiplicity, RangeAtOrigin)
{
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        auto f = oracle::random_form(rng, 1 + k % 3, 1 + k % 5, 4);
        int const m = multiplicity_at_origin(f);
        bool no_x0 = std::all_of(f.terms().begin(), f.terms().end(), [](auto const& kv) { return kv.first[0] == 0; });
        EXPECT_EQ(m == f.d(), no_x0);
    }
}

TEST(Destabilize, Monomials)
{
    EXPECT_EQ(destabilize(HomogeneousForm::monomial({0, 2}), 3), HomogeneousForm::monomial({0, 5}));
    EXPECT_EQ(destabilize(HomogeneousForm::monomial({1, 1, 1}), 4), HomogeneousForm::monomial({1, 5, 5}));
    EXPECT_THROW(destabilize(cubic(), -1), Error);
}

TEST(Destabilize, SupportTranslationAndAdditivity)
{
    std::mt19937_64 rng(13);
    for (int k = 0; k < 60; ++k) {
        int const r = 1 + k % 3;
        int const N = k % 4;
        auto f = oracle::random_form(rng, r, 1 + k % 4, 5);
        auto g = destabilize(f, N);
        EXPECT_EQ(g.d(), f.d() + r * N);
        ASSERT_EQ(g.terms().size(), f.terms().size());
        auto it = g.terms().begin();
        for (auto const& [e, c] : f.terms()) {
            auto shifted = e;
            for (int i = 1; i <= r; ++i)
                shifted[i] += N;
            EXPECT_EQ(it->first, shifted);
            EXPECT_EQ(it->second, c);
            ++it;
        }
        ExponentVector ones(r + 1, N);
        ones[0] = 0;
        auto hn = HomogeneousForm::monomial(ones);
        auto p = oracle::random_point(rng, r + 1);
        if (N > 0) {
            EXPECT_EQ(multiplicity_at(g, p), multiplicity_at(f, p) + multiplicity_at(hn, p));
        }
    }
}

TEST(HilbertPolynomial, Values)
{
    for (int t = 1; t < 10; ++t)
        EXPECT_EQ(hilbert_poly_value(1, 2, t), 2);
    EXPECT_EQ(hilbert_poly_value(2, 3, 3), 9);
    for (int r = 1; r < 5; ++r)
        for (int d = 1; d < 6; ++d)
            EXPECT_EQ(hilbert_poly_value(r, d, 0), 1);
    // plane curves: P(t) = d t - d(d-3)/2 for t >= d
    EXPECT_EQ(hilbert_poly_value(2, 4, 10), 4 * 10 - 2);
    EXPECT_THROW(hilbert_poly_value(0, 2, 1), Error);
}

TEST(ProjPoint, EqualityUpToScale)
{
    EXPECT_EQ(pt({1, 2, 3}), pt({-2, -4, -6}));
    EXPECT_NE(pt({1, 2, 3}), pt({1, 2, 4}));
    EXPECT_THROW(pt({0, 0}), Error);
}
