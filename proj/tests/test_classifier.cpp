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

#include <gitmult/classifier.hpp>
#include <gitmult/report_json.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace gitmult;

namespace {

ProjPoint pt(std::initializer_list<int> c)
{
    RationalVector v;
    for (int x : c)
        v.emplace_back(x);
    return ProjPoint(std::move(v));
}

} // namespace

TEST(ClassifyAtOrigin, NodalCubic)
{
    auto f = parse_form("r=2 d=3\n1 1 1 1\n1 0 3 0\n");
    auto rep = classify_at_origin(f);
    EXPECT_EQ(rep.N, separation_threshold(2, 3));
    ASSERT_TRUE(rep.m_band);
    EXPECT_EQ(*rep.m_band, 2);
    EXPECT_EQ(rep.m_direct, 2);
    EXPECT_TRUE(rep.agreed);
    EXPECT_EQ(rep.matches, std::vector<int>{2});
}

TEST(ClassifyAtOrigin, PurePower)
{
    for (int r = 1; r <= 3; ++r)
        for (int d = 1; d <= 4; ++d) {
            ExponentVector e(r + 1, 0);
            e[0] = d;
            auto rep = classify_at_origin(HomogeneousForm::monomial(e));
            EXPECT_EQ(rep.m_band, 0);
            EXPECT_TRUE(rep.agreed);
        }
}

TEST(ClassifyAtOrigin, RefusesSmallN)
{
    auto f = HomogeneousForm::monomial({0, 2});
    try {
        classify_at_origin(f, 2);
        FAIL() << "expected refusal";
    } catch (Error const& e) {
        EXPECT_NE(std::string(e.what()).find("threshold 3"), std::string::npos);
    }
    EXPECT_TRUE(classify_at_origin(f, 3).agreed);
}

TEST(ClassifyAt, MovesPointFirst)
{
    auto f = HomogeneousForm::monomial({2, 0}); // x0^2 vanishes doubly at [0:1]
    EXPECT_EQ(classify_at(f, pt({0, 1})).m_band, 2);
    EXPECT_EQ(classify_at(f, pt({1, 0})).m_band, 0);
    EXPECT_EQ(classify_at(HomogeneousForm::monomial({0, 2}), pt({1, 0})).m_band, 2);
    auto cubic = parse_form("r=2 d=3\n1 1 1 1\n1 0 3 0\n");
    EXPECT_EQ(classify_at(cubic, pt({1, 1, 1})).m_band, 0);
}

TEST(ClassifyAt, AgreesWithOracleMultiplicity)
{
    std::mt19937_64 rng(61);
    for (int k = 0; k < 60; ++k) {
        int const r = 1 + k % 2;
        auto f = oracle::random_form(rng, r, 1 + k % 4, 5);
        auto p = oracle::random_point(rng, r + 1);
        auto rep = classify_at(f, p);
        EXPECT_TRUE(rep.agreed);
        EXPECT_EQ(rep.m_band, oracle::multiplicity(f, p.coords()));
    }
}

TEST(ClassifyAtOrigin, StableAcrossN)
{
    for (int m = 0; m <= 3; ++m)
        for (auto const& f : gen_corpus(2, 3, m, 5, 99)) {
            int const t = separation_threshold(2, 3);
            for (int N = t; N <= t + 3; ++N)
                EXPECT_EQ(classify_at_origin(f, N).m_band, m);
        }
}

TEST(GenCorpus, Construction)
{
    for (int r = 1; r <= 3; ++r)
        for (int d = 1; d <= 5; ++d)
            for (int m = 0; m <= d; ++m) {
                auto corpus = gen_corpus(r, d, m, 10, 1234);
                ASSERT_EQ(corpus.size(), 10u);
                EXPECT_EQ(corpus, gen_corpus(r, d, m, 10, 1234));
                for (auto const& f : corpus) {
                    EXPECT_EQ(multiplicity_at_origin(f), m);
                    if (m == d) {
                        for (auto const& kv : f.terms())
                            EXPECT_EQ(kv.first[0], 0);
                    }
                }
            }
    EXPECT_NE(gen_corpus(2, 3, 1, 10, 1), gen_corpus(2, 3, 1, 10, 2));
    EXPECT_THROW(gen_corpus(2, 3, 4, 1, 1), Error);
    EXPECT_THROW(gen_corpus(2, 3, -1, 1, 1), Error);
    EXPECT_THROW(gen_corpus(2, 3, 1, 0, 1), Error);
}

TEST(VerifyCorpus, SmallCases)
{
    auto a = verify_theorem_main(1, 2, 3, 25, 7);
    EXPECT_EQ(a.total, 75);
    EXPECT_EQ(a.passed, 75);
    auto b = verify_theorem_main(2, 3, std::nullopt, 25, 7);
    EXPECT_EQ(b.total, 100);
    EXPECT_TRUE(b.ok());
    EXPECT_THROW(verify_theorem_main(1, 2, 2, 5, 7), Error);
}

TEST(VerifyCorpus, DeterministicAcrossJobs)
{
    auto one = verify_theorem_main(2, 2, std::nullopt, 10, 3, 1);
    auto four = verify_theorem_main(2, 2, std::nullopt, 10, 3, 4);
    EXPECT_EQ(to_json(one), to_json(four));
}

TEST(BoundCheck, PurePowerPinsMultiplicity)
{
    for (int d = 2; d <= 6; ++d) {
        auto f = HomogeneousForm::monomial({0, d});
        auto cert = torus_index(f);
        EXPECT_EQ(cert.delta_sq, ratio(d * d, 2));
        auto res = bound_check(f, stratum_label(cert), {ProjPoint::origin(1)});
        EXPECT_EQ(res.lower, d);
        EXPECT_EQ(res.upper, d);
        EXPECT_EQ(res.max_mult, d);
        EXPECT_TRUE(res.within);
    }
}

TEST(BoundCheck, RejectsInconsistentLabels)
{
    auto f = HomogeneousForm::monomial({0, 2});
    StratumLabel bad{OneParamSubgroup({1, -1}), Rational(3), Rational(1)};
    EXPECT_THROW(bound_check(f, bad, {ProjPoint::origin(1)}), Error);
    auto good = stratum_label(torus_index(f));
    EXPECT_THROW(bound_check(f, good, {}), Error);
}

TEST(Json, ReportsRoundTrip)
{
    std::mt19937_64 rng(71);
    for (int k = 0; k < 40; ++k) {
        auto f = oracle::random_form(rng, 1 + k % 3, 1 + k % 4, 5);
        auto rep = classify_at_origin(f);
        auto j = to_json(rep);
        auto back = classification_from_json(Json::parse(j.dump()));
        EXPECT_EQ(to_json(back), j);
        EXPECT_EQ(back.cert.q, rep.cert.q);
        EXPECT_EQ(back.cert.delta_sq, rep.cert.delta_sq);
        EXPECT_EQ(back.m_band, rep.m_band);
        // no floating point anywhere in machine output
        EXPECT_EQ(j.dump().find('.'), std::string::npos);
    }
    auto label = stratum_label(torus_index(HomogeneousForm::monomial({0, 3, 0})));
    EXPECT_EQ(stratum_label_from_json(to_json(label)), label);
    BandParams const p{2, 3, 4, 1};
    EXPECT_EQ(band_params_from_json(to_json(p)), p);
}
