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

// Recovers the multiplicity of the nodal cubic x0 x1 x2 + x1^3 at [1:0:0]
// from the band holding the nearest point of its destabilization.

#include <gitmult/gitmult.hpp>

#include <iostream>

int main()
{
    using namespace gitmult;
    auto const f = parse_form("r=2 d=3\n1 1 1 1\n1 0 3 0\n");
    auto const report = classify_at_origin(f);
    std::cout << "N = " << report.N << ", delta^2 = " << to_string(report.cert.delta_sq) << '\n';
    std::cout << "band multiplicity " << *report.m_band << ", direct multiplicity " << report.m_direct << '\n';
    return report.agreed ? 0 : 1;
}
