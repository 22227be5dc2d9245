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

#include "finslerfoot/jacobi.hpp"
#include "finslerfoot/normal_map.hpp"

using namespace ff;

namespace {

MetricSpec vertical_drift(double beta) {
    PolyMatrix a = PolyMatrix::identity(2);
    double s = 1.0 / ((1 + beta) * (1 + beta));
    a.at(0, 0) = PolyExpr::constant(s);
    a.at(1, 1) = PolyExpr::constant(s);
    PolyVector b;
    b.n = 2;
    b.entries = {PolyExpr::constant(0.0), PolyExpr::constant(beta / (1 + beta))};
    return MetricSpec::randers(std::move(a), std::move(b));
}

MetricSpec conformal() {
    PolyMatrix g = PolyMatrix::identity(2);
    PolyExpr f = PolyExpr::parse("1 + 0.1*x1^2");
    g.at(0, 0) = f;
    g.at(1, 1) = f;
    return MetricSpec::riemannian(g);
}

}  // namespace

TEST_CASE("parallel rays from a straight boundary: constant fields, no focusing") {
    MetricSpec eu = MetricSpec::euclidean(2);
    LineBoundary line(Vec2(0, 0), Vec2(0, 1));
    BoundaryPatch p = adapted_chart(line, 0.2);
    JacobiBundle B = jacobi_bundle_fd(eu, p, VecN::Zero(1), 2.0);
    for (size_t i = 0; i < B.base.samples.size(); i += 100) {
        CHECK((B.fields[0].zeta[i] - B.fields[0].zeta[0]).norm() < 1e-9);
        CHECK(B.fields[0].zeta_dot[i].norm() < 1e-9);
    }
    CHECK_FALSE(conjugate_distance_from_bundle(B).has_value());
}

TEST_CASE("radial fan from the unit circle focuses at the center") {
    MetricSpec eu = MetricSpec::euclidean(2);
    CircleBoundary circle(Vec2(0, 0), 1.0, true);
    BoundaryPatch p = adapted_chart(circle, 0.0);
    JacobiBundle B = jacobi_bundle_fd(eu, p, VecN::Zero(1), 1.6);
    // tangential magnitude decays linearly to zero at the center
    for (double s : {0.0, 0.25, 0.5, 0.9}) {
        MatN M = B.M_at(s);
        double tangential = (p.R.transpose() * M.col(0))[0];
        CHECK(tangential == doctest::Approx(1.0 - s).epsilon(1e-6));
    }
    auto conj = conjugate_distance_from_bundle(B);
    REQUIRE(conj.has_value());
    CHECK(std::abs(*conj - 1.0) < 1e-6);

    // det M positive before the first zero
    for (double s : {0.05, 0.3, 0.6, 0.95})
        CHECK(B.detM_at(s) > 0.0);
    // kernel combination vanishes at the conjugate distance
    Eigen::VectorXd k = degenerate_kernel(B, *conj);
    MatN M = B.M_at(*conj);
    CHECK((M * k).norm() < 1e-8);
}

TEST_CASE("ellipse vertex: conjugate distance is the curvature radius") {
    MetricSpec eu = MetricSpec::euclidean(2);
    EllipseBoundary ell(Vec2(0, 0), 2.0, 1.0, true);
    BoundaryPatch p = adapted_chart(ell, 0.0);
    auto conj = conjugate_distance(eu, p, VecN::Zero(1), 2.0);
    REQUIRE(conj.has_value());
    CHECK(std::abs(*conj - 0.5) < 1e-6);
}

TEST_CASE("euclidean focal distance equals one over the interior curvature") {
    MetricSpec eu = MetricSpec::euclidean(2);
    RadialBoundary cc = RadialBoundary::cosine_circle(Vec2(0, 0), 1.0, 0.08, 3, true);
    JacobiOptions jopts;
    for (double u : {0.0, 0.17, 0.42, 0.71}) {
        double kappa = cc.curvature_toward_interior(u);
        REQUIRE(kappa > 0.0);
        BoundaryPatch p = adapted_chart(cc, u);
        auto conj = conjugate_distance(eu, p, VecN::Zero(1), 1.3 / kappa, jopts);
        REQUIRE(conj.has_value());
        CHECK(std::abs(*conj - 1.0 / kappa) < 1e-5);
    }
}

TEST_CASE("drifted metric focuses at the scaled distance") {
    // tangential hessian of phi at e_n is 1/(1+beta), so the focal distance
    // on the unit circle contracts to 1/(1+beta)
    double beta = 0.25;
    MetricSpec m = vertical_drift(beta);
    CircleBoundary circle(Vec2(0, 0), 1.0, true);
    BoundaryPatch p = adapted_chart(circle, 0.75);  // bottom point, chart = identity
    auto conj = conjugate_distance(m, p, VecN::Zero(1), 2.0);
    REQUIRE(conj.has_value());
    CHECK(std::abs(*conj - 1.0 / (1 + beta)) < 1e-5);
}

TEST_CASE("variational route: constant and linear closed forms") {
    MetricSpec eu = MetricSpec::euclidean(2);
    Trajectory base = integrate(eu, {Vec2(0, 0), Vec2(0, 1)}, 0.0, 1.5, 1e-3);
    VecN e1 = Vec2(1, 0);
    JacobiField constant = jacobi_ode(eu, base, e1, VecN(Vec2(0, 0)));
    JacobiField shrink = jacobi_ode(eu, base, e1, VecN(Vec2(-1, 0)));
    for (size_t i = 0; i < base.samples.size(); i += 150) {
        double t = base.samples[i].t;
        CHECK((constant.zeta[i] - e1).norm() < 1e-12);
        CHECK((shrink.zeta[i] - (1.0 - t) * e1).norm() < 1e-11);
    }
}

TEST_CASE("differenced bundle agrees with the linearized equation") {
    MetricSpec m = conformal();
    CircleBoundary circle(Vec2(0, 0), 1.3, true);
    BoundaryPatch p = adapted_chart(circle, 0.23);
    JacobiBundle B = jacobi_bundle_fd(m, p, VecN::Zero(1), 1.0);
    NormalData nd = normal_sensitivity(m, p, VecN::Zero(1));
    JacobiField ode = jacobi_ode(m, B.base, p.tangent(0, VecN::Zero(1)), VecN(nd.DV.col(0)));
    double dev = 0.0;
    for (size_t i = 0; i < B.base.samples.size(); ++i)
        dev = std::max(dev, (ode.zeta[i] - B.fields[0].zeta[i]).cwiseAbs().maxCoeff());
    CHECK(dev < 1e-5);
}

TEST_CASE("x-independent special-form closed form for the bundle") {
    double beta = 0.25;
    MetricSpec m = vertical_drift(beta);
    CircleBoundary circle(Vec2(0, 0), 1.0, true);
    BoundaryPatch p = adapted_chart(circle, 0.75);
    JacobiBundle B = jacobi_bundle_fd(m, p, VecN::Zero(1), 1.0);
    // zeta'(t) = (1 - t (1+beta) kappa) zeta'(0) with kappa = 1
    for (size_t i = 0; i < B.base.samples.size(); i += 100) {
        double t = B.base.samples[i].t;
        double tangential = (p.R.transpose() * B.fields[0].zeta[i])[0];
        CHECK(std::abs(tangential - (1.0 - t * (1 + beta))) < 1e-5);
    }
}

TEST_CASE("condition monitor grows toward the conjugate point") {
    MetricSpec eu = MetricSpec::euclidean(2);
    CircleBoundary circle(Vec2(0, 0), 1.0, true);
    BoundaryPatch p = adapted_chart(circle, 0.0);
    JacobiBundle B = jacobi_bundle_fd(eu, p, VecN::Zero(1), 1.2);
    CHECK(B.condition_at(0.95) > 5.0 * B.condition_at(0.2));
}

TEST_CASE("dimension 3: spherical cap focuses at its curvature radius") {
    MetricSpec eu = MetricSpec::euclidean(3);
    BoundaryPatch p = BoundaryPatch::from_graph(3, PolyExpr::parse("x1^2 + x2^2"));
    // D2f = 2 I, so both principal directions focus at 1/2
    auto conj = conjugate_distance(eu, p, VecN::Zero(2), 1.2);
    REQUIRE(conj.has_value());
    CHECK(std::abs(*conj - 0.5) < 1e-5);
}
