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
#include "finslerfoot/hj_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace ff {

namespace {

int gcd_int(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

// Segment weight: Simpson quadrature of phi(x; delta) along p -> q.
inline double segment_weight(const MetricSpec& m, const Vec2& p, const Vec2& q) {
    Vec2 d = q - p;
    VecN dv = d;
    return (m.eval(VecN(p), dv) + 4.0 * m.eval(VecN(0.5 * (p + q)), dv) +
            m.eval(VecN(q), dv)) /
           6.0;
}

inline bool segment_inside(const BoundaryCurve& b, const Vec2& p, const Vec2& q) {
    return b.inside(Vec2(0.5 * (p + q))) && b.inside(Vec2(0.75 * p + 0.25 * q)) &&
           b.inside(Vec2(0.25 * p + 0.75 * q));
}

}  // namespace

OracleGrid oracle_distance(const MetricSpec& metric, const BoundaryCurve& boundary,
                           const Box& box, double h, int r) {
    if (metric.dimension() != 2) throw ConfigError("oracle runs in dimension 2 only");
    if (h <= 0.0 || r < 2) throw ConfigError("oracle needs h > 0 and r >= 2");

    OracleGrid g;
    g.h = h;
    g.xmin = box.lo[0];
    g.ymin = box.lo[1];
    g.nx = static_cast<int>(std::floor((box.hi[0] - box.lo[0]) / h + 1e-9)) + 1;
    g.ny = static_cast<int>(std::floor((box.hi[1] - box.lo[1]) / h + 1e-9)) + 1;
    const size_t total = static_cast<size_t>(g.nx) * g.ny;
    g.d.assign(total, std::numeric_limits<double>::infinity());
    g.in.assign(total, 0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            g.in[static_cast<size_t>(j) * g.nx + i] = boundary.inside(g.position(i, j)) ? 1 : 0;

    // visibility-reduced stencil offsets within radius r
    std::vector<std::pair<int, int>> offsets;
    for (int dj = -r; dj <= r; ++dj)
        for (int di = -r; di <= r; ++di) {
            if (di == 0 && dj == 0) continue;
            if (di * di + dj * dj > r * r) continue;
            if (gcd_int(di, dj) != 1) continue;
            offsets.emplace_back(di, dj);
        }

    using HeapItem = std::pair<double, int>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;

    // boundary sources feed nearby lattice nodes directly
    auto params = equal_arclength_params(boundary, 0.9 * h);
    const double reach = r * h;
    for (double u : params) {
        Vec2 src = boundary.gamma(u);
        int i0 = static_cast<int>(std::floor((src.x() - g.xmin) / h)) - r;
        int j0 = static_cast<int>(std::floor((src.y() - g.ymin) / h)) - r;
        for (int j = std::max(0, j0); j <= std::min(g.ny - 1, j0 + 2 * r + 1); ++j)
            for (int i = std::max(0, i0); i <= std::min(g.nx - 1, i0 + 2 * r + 1); ++i) {
                size_t id = static_cast<size_t>(j) * g.nx + i;
                if (!g.in[id]) continue;
                Vec2 q = g.position(i, j);
                if ((q - src).norm() > reach) continue;
                if (!segment_inside(boundary, src, q)) continue;
                double w = segment_weight(metric, src, q);
                if (w < g.d[id]) {
                    g.d[id] = w;
                    heap.emplace(w, static_cast<int>(id));
                }
            }
    }

    // lattice Dijkstra with lazily computed directed edge weights
    while (!heap.empty()) {
        auto [du, id] = heap.top();
        heap.pop();
        if (du > g.d[id]) continue;
        int i = id % g.nx, j = id / g.nx;
        Vec2 p = g.position(i, j);
        for (auto [di, dj] : offsets) {
            int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= g.nx || jj >= g.ny) continue;
            size_t vid = static_cast<size_t>(jj) * g.nx + ii;
            if (!g.in[vid]) continue;
            Vec2 q = g.position(ii, jj);
            if (!segment_inside(boundary, p, q)) continue;
            double nd = du + segment_weight(metric, p, q);
            if (nd < g.d[vid]) {
                g.d[vid] = nd;
                heap.emplace(nd, static_cast<int>(vid));
            }
        }
    }

    for (size_t id = 0; id < total; ++id)
        if (g.in[id] && !std::isfinite(g.d[id])) ++g.disconnected;
    return g;
}

OracleCompareReport oracle_compare(const DistanceField& field, const OracleGrid& oracle,
                                   int stencil_r, double scale) {
    OracleCompareReport rep;
    rep.bound = 5.0 * (oracle.h * stencil_r + 1.0 / stencil_r) * scale;
    double sum = 0.0;
    for (int j = 0; j < field.ny; ++j) {
        for (int i = 0; i < field.nx; ++i) {
            const FieldCell& c = field.at(i, j);
            if (c.cls != PointClass::Regular) continue;
            Vec2 P = field.position(i, j);
            double fi = (P.x() - oracle.xmin) / oracle.h;
            double fj = (P.y() - oracle.ymin) / oracle.h;
            int oi = static_cast<int>(std::lround(fi));
            int oj = static_cast<int>(std::lround(fj));
            if (oi < 0 || oj < 0 || oi >= oracle.nx || oj >= oracle.ny) continue;
            if (std::abs(fi - oi) > 1e-6 || std::abs(fj - oj) > 1e-6) continue;
            double od = oracle.at(oi, oj);
            if (!std::isfinite(od)) continue;
            double dev = std::abs(od - c.d);
            sum += dev;
            rep.max_abs = std::max(rep.max_abs, dev);
            if (dev > rep.bound) ++rep.flagged;
            ++rep.compared;
        }
    }
    rep.mean_abs = rep.compared > 0 ? sum / rep.compared : 0.0;
    return rep;
}

}  // namespace ff
