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
#include <doctest.h>

#include <cmath>

#include "finslerfoot/geodesic.hpp"
#include "finslerfoot/second_variation.hpp"

using namespace ff;

namespace {

MetricSpec conformal() {
    PolyMatrix g = PolyMatrix::identity(2);
    PolyExpr f = PolyExpr::parse("1 + 0.1*x1^2");
    g.at(0, 0) = f;
    g.at(1, 1) = f;
    return MetricSpec::riemannian(g);
}

MetricSpec randers_half(double beta) {
    PolyVector b;
    b.n = 2;
    b.entries = {PolyExpr::constant(beta), PolyExpr::constant(0.0)};
    return MetricSpec::randers(PolyMatrix::identity(2), b);
}

// Christoffel-symbol acceleration for a riemannian metric; independent route.
VecN christoffel_accel(const MetricSpec& m, const PolyMatrix& g, const VecN& xi,
                       const VecN& v) {
    const int n = m.dimension();
    MatN gv = g.value(xi);
    MatN ginv = gv.inverse();
    VecN acc = VecN::Zero(n);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double dgi = g.deriv(i, xi)(j, l);
                    double dgj = g.deriv(j, xi)(i, l);
                    double dgl = g.deriv(l, xi)(i, j);
                    s += ginv(k, l) * 0.5 * (dgi + dgj - dgl) * v[i] * v[j];
                }
        }
        acc[k] = -s;
    }
    return acc;
}

}  // namespace

TEST_CASE("acceleration vanishes for position-independent metrics") {
    for (const MetricSpec& m : {MetricSpec::euclidean(2), randers_half(0.5)}) {
        VecN a = geodesic_accel(m, Vec2(0.3, -0.2), Vec2(0.7, 0.4));
        CHECK(a.cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("acceleration matches the christoffel route on a conformal metric") {
    PolyMatrix g = PolyMatrix::identity(2);
    PolyExpr f = PolyExpr::parse("1 + 0.1*x1^2");
    g.at(0, 0) = f;
    g.at(1, 1) = f;
    MetricSpec m = MetricSpec::riemannian(g);
    Rng rng(3);
    for (int k = 0; k < 25; ++k) {
        VecN xi = Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1));
        VecN v = Vec2(rng.centered(), rng.centered());
        if (v.norm() < 0.2) continue;
        v /= m.eval(xi, v);  // unit speed, where energy and length agree
        VecN ours = geodesic_accel(m, xi, v);
        VecN ref = christoffel_accel(m, g, xi, v);
        CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("radial shot from the unit circle reaches the center") {
    MetricSpec m = MetricSpec::euclidean(2);
    CircleBoundary circle(Vec2(0, 0), 1.0, true);
    BoundaryPatch p = adapted_chart(circle, 0.0);
    Trajectory t = shoot_normal(m, p, VecN::Zero(1), 1.0, 1e-3);
    CHECK((t.back().xi - Vec2(0, 0)).norm() < 1e-10);
    CHECK(t.back().t == doctest::Approx(1.0));
}

TEST_CASE("randers half-plane: the normal ray hits the documented target") {
    MetricSpec m = randers_half(0.5);
    LineBoundary line(Vec2(0, 0), Vec2(0, 1));
    // foot at x = 1/sqrt(3): the normal ray through it passes (0, 1)
    BoundaryPatch p = adapted_chart(line, 1.0 / std::sqrt(3.0));
    double s = std::sqrt(3.0) / 2.0;
    Trajectory t = shoot_normal(m, p, VecN::Zero(1), s, 1e-3);
    CHECK((t.back().xi - Vec2(0, 1)).norm() < 1e-9);
}

TEST_CASE("unit speed is preserved") {
    MetricSpec m = conformal();
    CircleBoundary circle(Vec2(0, 0), 1.4, true);
    BoundaryPatch p = adapted_chart(circle, 0.37);
    Trajectory t = shoot_normal(m, p, VecN::Zero(1), 2.0, 1e-3);
    CHECK(unit_speed_drift(m, t) / t.length() < 1e-8);
}

TEST_CASE("straight-line property for position-independent metrics") {
    MetricSpec m = randers_half(0.5);
    LineBoundary line(Vec2(0, 0), Vec2(0, 1));
    BoundaryPatch p = adapted_chart(line, 0.3);
    Trajectory t = shoot_normal(m, p, VecN::Zero(1), 2.0, 1e-3);
    const VecN x0 = t.samples.front().xi, v0 = t.samples.front().v;
    double dev = 0.0;
    for (const auto& s : t.samples)
        dev = std::max(dev, (s.xi - (x0 + s.t * v0)).cwiseAbs().maxCoeff());
    CHECK(dev < 1e-10);
}

TEST_CASE("integrator order on the conformal example") {
    MetricSpec m = conformal();
    VecN x0 = Vec2(0.3, -0.8);
    VecN v0 = Vec2(0.6, 0.8);
    v0 /= m.eval(x0, v0);
    auto endpoint = [&](double h) { return integrate(m, {x0, v0}, 0.0, 1.0, h).back().xi; };
    VecN e1 = endpoint(8e-3), e2 = endpoint(4e-3), e3 = endpoint(2e-3);
    double order = std::log2((e1 - e2).norm() / (e2 - e3).norm());
    CHECK(order >= 3.9);
    CHECK(order <= 4.6);
}

TEST_CASE("geodesics locally beat perturbed polylines") {
    MetricSpec m = conformal();
    VecN x0 = Vec2(0.2, -0.5);
    VecN v0 = Vec2(0.9, 0.45);
    v0 /= m.eval(x0, v0);
    Trajectory t = integrate(m, {x0, v0}, 0.0, 0.6, 1e-3);
    double L_geo = curve_length(m, t);

    // random same-endpoint perturbations, interior nodes displaced
    Rng rng(9);
    const int nodes = 24;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<VecN> pts;
        for (int i = 0; i <= nodes; ++i) {
            double tt = 0.6 * i / nodes;
            GeodesicState s = t.at(tt);
            VecN q = s.xi;
            if (i != 0 && i != nodes) {
                double bump = std::sin(M_PI * i / nodes);
                q += 0.02 * bump * Vec2(rng.centered(), rng.centered());
            }
            pts.push_back(q);
        }
        CHECK(polyline_length(m, pts, 4) >= L_geo - 1e-9);
    }
}

TEST_CASE("tau completion on the documented examples") {
    MetricSpec eu = MetricSpec::euclidean(2);
    VecN sig(1);
    sig[0] = 0.6;
    CHECK(tau_normalize(eu, Vec2(0.3, 0.4), sig) == doctest::Approx(0.8).epsilon(1e-12));
    sig[0] = 0.0;
    CHECK(tau_normalize(eu, Vec2(0, 0), sig) == doctest::Approx(1.0));
    MetricSpec rd = randers_half(0.5);
    CHECK(tau_normalize(rd, Vec2(0.1, 0.9), sig) == doctest::Approx(1.0));
    sig[0] = 2.0;  // cannot be completed to a unit vector
    CHECK_THROWS_AS(tau_normalize(eu, Vec2(0, 0), sig), NumericError);
}

TEST_CASE("backward shot reaches the origin on the euclidean axis") {
    MetricSpec eu = MetricSpec::euclidean(2);
    VecN sig = VecN::Zero(1);
    Trajectory t = shoot_backward(eu, Vec2(0, 1), sig, 1.0, 1e-3);
    CHECK((t.back().xi - Vec2(0, 0)).norm() < 1e-12);
    CHECK(t.back().t == doctest::Approx(0.0));
    CHECK_FALSE(t.forward);
}

TEST_CASE("backward-then-forward round trip returns to the start") {
    MetricSpec m = conformal();
    VecN sig(1);
    sig[0] = 0.2;
    VecN X = Vec2(0.4, 0.7);
    Trajectory back = shoot_backward(m, X, sig, 0.8, 1e-3);
    Trajectory fwd = integrate(m, {back.back().xi, back.back().v}, back.back().t, 0.8, 1e-3);
    CHECK((fwd.back().xi - X).norm() < 1e-8);
}

TEST_CASE("x-independent backward shots are straight") {
    MetricSpec m = randers_half(0.5);
    VecN sig(1);
    sig[0] = 0.1;
    VecN X = Vec2(0.0, 1.0);
    double tau = tau_normalize(m, X, sig);
    Trajectory t = shoot_backward(m, X, sig, 0.7, 1e-3);
    VecN w = Vec2(0.1, tau);
    for (const auto& s : t.samples)
        CHECK((s.xi - (X - (1.0 - s.t) * w)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("box truncation flags the trajectory") {
    MetricSpec eu = MetricSpec::euclidean(2);
    Box box = Box::square2(-1, 1, -1, 1);
    Trajectory t = integrate(eu, {Vec2(0, 0), Vec2(1, 0)}, 0.0, 5.0, 1e-2, &box);
    CHECK(t.truncated);
    CHECK(t.back().xi[0] <= 1.0 + 1e-2);
}

TEST_CASE("dense interpolation is fourth-order accurate") {
    MetricSpec m = conformal();
    VecN x0 = Vec2(0.1, -0.4), v0 = Vec2(0.8, 0.6);
    v0 /= m.eval(x0, v0);
    Trajectory coarse = integrate(m, {x0, v0}, 0.0, 1.0, 5e-3);
    Trajectory fine = integrate(m, {x0, v0}, 0.0, 1.0, 1e-4);
    double worst = 0.0;
    for (int k = 1; k < 40; ++k) {
        double t = k / 40.0;
        worst = std::max(worst, (coarse.at(t).xi - fine.at(t).xi).norm());
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("adaptive integrator matches the fixed-step route") {
    MetricSpec m = conformal();
    VecN x0 = Vec2(0.3, -0.8), v0 = Vec2(0.6, 0.8);
    v0 /= m.eval(x0, v0);
    Trajectory fixed = integrate(m, {x0, v0}, 0.0, 1.2, 1e-3);
    Trajectory adaptive = integrate_adaptive(m, {x0, v0}, 0.0, 1.2, 1e-10);
    CHECK((fixed.back().xi - adaptive.back().xi).norm() < 1e-8);
    CHECK(unit_speed_drift(m, adaptive) < 1e-7);
    CHECK(adaptive.samples.size() < fixed.samples.size());  // larger steps
}
