/*
 * Copyright 2026 the finslerfoot authors
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
#ifndef FINSLERFOOT_HJ_ORACLE_HPP
#define FINSLERFOOT_HJ_ORACLE_HPP

#include "finslerfoot/distance_field.hpp"

namespace ff {

/// Brute-force distance oracle: directed shortest paths on a lattice with a
/// wide stencil, boundary samples as zero-distance sources. Shares no
/// geodesic code with the shooting pipeline.
struct OracleGrid {
    double xmin = 0, ymin = 0, h = 0;
    int nx = 0, ny = 0;
    std::vector<double> d;        // +inf outside / unreached
    std::vector<std::uint8_t> in; // interior mask
    int disconnected = 0;         // interior nodes never reached

    double at(int i, int j) const { return d[static_cast<size_t>(j) * nx + i]; }
    Vec2 position(int i, int j) const { return Vec2(xmin + i * h, ymin + j * h); }
};

/// Dijkstra from all boundary sources; edge weights are Simpson quadratures
/// of phi along straight segments (directed: Finsler lengths are one-way).
/// Error O(h r + 1/r): chord error plus stencil direction quantization.
OracleGrid oracle_distance(const MetricSpec& metric, const BoundaryCurve& boundary,
                           const Box& box, double h, int r);

struct OracleCompareReport {
    int compared = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    int flagged = 0;       // regular points beyond the theoretical bound
    double bound = 0.0;    // 5 (h r + 1/r) scale
};

/// Field-vs-oracle deviation over REGULAR grid points at coinciding lattice
/// positions. Grids must be aligned (commensurate spacings).
OracleCompareReport oracle_compare(const DistanceField& field, const OracleGrid& oracle,
                                   int stencil_r, double scale = 1.0);

}  // namespace ff

#endif
