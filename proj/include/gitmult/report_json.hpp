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

// JSON encoding of reports. Rationals are strings "p" or "p/q"; nothing is
// emitted as a floating-point number.

#include "classifier.hpp"
#include "hesselink.hpp"
#include "rational.hpp"
#include "statepoly.hpp"

#include <json.hpp>

namespace gitmult {

using Json = nlohmann::json;

inline Json rational_json(Rational const& x) { return to_string(x); }

inline Rational rational_from(Json const& j) { return parse_rational(j.get<std::string>()); }

inline Json vector_json(RationalVector const& v)
{
    Json out = Json::array();
    for (auto const& x : v)
        out.push_back(rational_json(x));
    return out;
}

inline RationalVector vector_from(Json const& j)
{
    RationalVector out;
    for (auto const& x : j)
        out.push_back(rational_from(x));
    return out;
}

inline Json to_json(InstabilityCertificate const& c)
{
    Json hull = Json::array();
    for (auto const& hw : c.hull_weights)
        hull.push_back({{"point", vector_json(hw.point)}, {"weight", rational_json(hw.weight)}});
    return {
        {"xi", vector_json(c.xi)},
        {"q", vector_json(c.q)},
        {"w", vector_json(c.w)},
        {"delta_sq", rational_json(c.delta_sq)},
        {"lambda", c.lambda ? Json(c.lambda->weights()) : Json(nullptr)},
        {"scale", rational_json(c.scale)},
        {"hull_weights", std::move(hull)},
    };
}

inline InstabilityCertificate certificate_from_json(Json const& j)
{
    InstabilityCertificate c;
    c.xi = vector_from(j.at("xi"));
    c.q = vector_from(j.at("q"));
    c.w = vector_from(j.at("w"));
    c.delta_sq = rational_from(j.at("delta_sq"));
    if (!j.at("lambda").is_null())
        c.lambda = OneParamSubgroup(j.at("lambda").get<std::vector<std::int64_t>>());
    c.scale = rational_from(j.at("scale"));
    for (auto const& hw : j.at("hull_weights"))
        c.hull_weights.push_back({vector_from(hw.at("point")), rational_from(hw.at("weight"))});
    return c;
}

inline Json to_json(BandParams const& p) { return {{"r", p.r}, {"d", p.d}, {"N", p.N}, {"m", p.m}}; }

inline BandParams band_params_from_json(Json const& j)
{
    return {j.at("r").get<int>(), j.at("d").get<int>(), j.at("N").get<int>(), j.at("m").get<int>()};
}

inline Json to_json(StratumLabel const& s)
{
    return {{"lambda", s.lambda_rep.weights()}, {"delta_sq", rational_json(s.delta_sq)}, {"scale", rational_json(s.scale)}};
}

inline StratumLabel stratum_label_from_json(Json const& j)
{
    return {OneParamSubgroup(j.at("lambda").get<std::vector<std::int64_t>>()), rational_from(j.at("delta_sq")),
            rational_from(j.at("scale"))};
}

inline Json to_json(ClassificationReport const& rep)
{
    Json out = {
        {"r", rep.r},
        {"d", rep.d},
        {"N", rep.N},
        {"threshold", rep.threshold_used},
        {"m_band", rep.m_band ? Json(*rep.m_band) : Json(nullptr)},
        {"m_direct", rep.m_direct},
        {"agreed", rep.agreed},
        {"matches", rep.matches},
        {"band_params", to_json(rep.band_params)},
        {"delta_sq", rational_json(rep.cert.delta_sq)},
        {"lambda", rep.cert.lambda ? Json(rep.cert.lambda->weights()) : Json(nullptr)},
        {"q", vector_json(rep.cert.q)},
        {"certificate", to_json(rep.cert)},
    };
    if (!rep.bands.empty()) {
        Json bands = Json::array();
        for (auto const& b : rep.bands)
            bands.push_back({{"m", b.m}, {"dist_sq", rational_json(b.dist_sq)}, {"l_sq", rational_json(b.l_sq)},
                             {"contains", b.contains}});
        out["bands"] = std::move(bands);
    }
    return out;
}

inline ClassificationReport classification_from_json(Json const& j)
{
    ClassificationReport rep;
    rep.r = j.at("r").get<int>();
    rep.d = j.at("d").get<int>();
    rep.N = j.at("N").get<int>();
    rep.threshold_used = j.at("threshold").get<int>();
    if (!j.at("m_band").is_null())
        rep.m_band = j.at("m_band").get<int>();
    rep.m_direct = j.at("m_direct").get<int>();
    rep.agreed = j.at("agreed").get<bool>();
    rep.matches = j.at("matches").get<std::vector<int>>();
    rep.band_params = band_params_from_json(j.at("band_params"));
    rep.cert = certificate_from_json(j.at("certificate"));
    if (j.contains("bands"))
        for (auto const& b : j.at("bands"))
            rep.bands.push_back({b.at("m").get<int>(), rational_from(b.at("dist_sq")), rational_from(b.at("l_sq")),
                                 b.at("contains").get<bool>()});
    return rep;
}

inline Json to_json(BoundCheckResult const& b)
{
    return {{"lower", rational_json(b.lower)},
            {"upper", rational_json(b.upper)},
            {"max_mult", b.max_mult},
            {"within", b.within}};
}

inline BoundCheckResult bound_from_json(Json const& j)
{
    return {rational_from(j.at("lower")), rational_from(j.at("upper")), j.at("max_mult").get<int>(),
            j.at("within").get<bool>()};
}

inline Json to_json(ThresholdReport const& t)
{
    Json pairs = Json::array();
    for (auto const& p : t.pairs)
        pairs.push_back({{"m", p.m}, {"m_prime", p.m_prime}, {"min_N", p.min_N}});
    return {{"r", t.r}, {"d", t.d}, {"threshold", t.threshold}, {"pairs", std::move(pairs)}};
}

inline Json to_json(VerifySummary const& s)
{
    Json failures = Json::array();
    for (auto const& f : s.failures)
        failures.push_back({{"m", f.m}, {"form", f.form}, {"m_band", f.m_band ? Json(*f.m_band) : Json(nullptr)}});
    return {{"r", s.r},
            {"d", s.d},
            {"N", s.N},
            {"count", s.count},
            {"total", s.total},
            {"passed", s.passed},
            {"passed_by_m", s.passed_by_m},
            {"failures", std::move(failures)},
            {"ok", s.ok()}};
}

} // namespace gitmult
