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

#include "finslerfoot/boundary.hpp"

using namespace ff;

TEST_CASE("unit circle adapted chart carries curvature +1 toward the disk") {
    CircleBoundary circle(Vec2(0, 0), 1.0, true);
    for (double u : {0.0, 0.13, 0.4, 0.75}) {
        BoundaryPatch p = adapted_chart(circle, u);
        VecN zero = VecN::Zero(1);
        CHECK(std::abs(p.height(zero)) < 1e-12);
        CHECK(std::abs(p.f_grad(zero)[0]) < 1e-12);
        CHECK(p.f_hess(zero)(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(p.R.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("straight line boundary is flat") {
    LineBoundary line(Vec2(0, 0), Vec2(0, 1));
    BoundaryPatch p = adapted_chart(line, 0.37);
    VecN x(1);
    x[0] = 0.2;
    CHECK(std::abs(p.height(x)) < 1e-14);
    CHECK(std::abs(p.f_hess(x)(0, 0)) < 1e-14);
    CHECK((line.interior_normal(0.0) - Vec2(0, 1)).norm() < 1e-14);
    CHECK(line.inside(Vec2(3, 0.1)));
    CHECK_FALSE(line.inside(Vec2(3, -0.1)));
}

TEST_CASE("ellipse vertex curvature") {
    EllipseBoundary ell(Vec2(0, 0), 2.0, 1.0, true);
    BoundaryPatch p = adapted_chart(ell, 0.0);  // gamma(0) = (2, 0)
    VecN zero = VecN::Zero(1);
    CHECK(p.f_hess(zero)(0, 0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK((p.interior_normal(zero) - VecN(Vec2(-1, 0))).norm() < 1e-12);
    CHECK(ell.curvature_toward_interior(0.0) == doctest::Approx(2.0));
    CHECK(ell.curvature_toward_interior(0.25) == doctest::Approx(0.25));
}

TEST_CASE("chart points lie back on the curve") {
    EllipseBoundary ell(Vec2(0.2, -0.1), 2.0, 1.0, true);
    BoundaryPatch p = adapted_chart(ell, 0.31);
    for (double x1 : {-0.15, -0.05, 0.02, 0.1}) {
        VecN xp(1);
        xp[0] = x1;
        VecN y = p.ambient(xp);
        // implicit equation of the ellipse
        double ex = (y[0] - 0.2) / 2.0, ey = y[1] + 0.1;
        CHECK(std::abs(ex * ex + ey * ey - 1.0) < 1e-10);
    }
}

TEST_CASE("hessian of the graph matches second differences") {
    RadialBoundary se = RadialBoundary::superellipse(Vec2(0, 0), 1.3, 1.0, 4, true);
    BoundaryPatch p = adapted_chart(se, 0.18);
    double h = 1e-4;
    for (double x1 : {-0.1, 0.0, 0.08}) {
        VecN xp(1), xpp(1), xpm(1);
        xp[0] = x1;
        xpp[0] = x1 + h;
        xpm[0] = x1 - h;
        double fd = (p.height(xpp) - 2 * p.height(xp) + p.height(xpm)) / (h * h);
        CHECK(std::abs(fd - p.f_hess(xp)(0, 0)) < 1e-6);
        double gd = (p.height(xpp) - p.height(xpm)) / (2 * h);
        CHECK(std::abs(gd - p.f_grad(xp)[0]) < 1e-8);
    }
}

TEST_CASE("normals on the documented examples") {
    CircleBoundary circle(Vec2(0, 0), 1.0, true);
    CHECK((boundary_normal(circle, 0.0) - Vec2(-1, 0)).norm() < 1e-12);
    EllipseBoundary ell(Vec2(0, 0), 2.0, 1.0, true);
    CHECK((boundary_normal(ell, 0.0) - Vec2(-1, 0)).norm() < 1e-12);
    CHECK((normal_at_point(circle, Vec2(0, 1), 1e-9) - Vec2(0, -1)).norm() < 1e-10);
    CHECK_THROWS_AS(normal_at_point(circle, Vec2(0, 1.2), 1e-9), DomainError);
}

TEST_CASE("orientation flip reverses the normal and the curvature sign") {
    CircleBoundary in(Vec2(0, 0), 1.0, true);
    CircleBoundary out(Vec2(0, 0), 1.0, false);
    CHECK((in.interior_normal(0.2) + out.interior_normal(0.2)).norm() < 1e-12);
    CHECK(in.curvature_toward_interior(0.2) ==
          doctest::Approx(-out.curvature_toward_interior(0.2)));
    BoundaryPatch po = adapted_chart(out, 0.2);
    CHECK(po.f_hess(VecN::Zero(1))(0, 0) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("cosine-perturbed circle stays consistent with its radius law") {
    RadialBoundary cc = RadialBoundary::cosine_circle(Vec2(0, 0), 1.0, 0.15, 3, true);
    for (double u : {0.0, 0.11, 0.37, 0.62}) {
        Vec2 g = cc.gamma(u);
        double theta = 2 * M_PI * u;
        double r = 1.0 * (1 + 0.15 * std::cos(3 * theta));
        CHECK(g.norm() == doctest::Approx(r).epsilon(1e-12));
        // derivative consistency by finite differences
        double du = 1e-6;
        Vec2 fd = (cc.gamma(u + du) - cc.gamma(u - du)) / (2 * du);
        CHECK((fd - cc.d1(u)).norm() < 1e-5);
        Vec2 fd2 = (cc.d1(u + du) - cc.d1(u - du)) / (2 * du);
        CHECK((fd2 - cc.d2(u)).norm() < 1e-4);
        Vec2 fd3 = (cc.d2(u + du) - cc.d2(u - du)) / (2 * du);
        CHECK((fd3 - cc.d3(u)).norm() < 1e-3);
    }
    CHECK(cc.inside(Vec2(0.5, 0)));
    CHECK_FALSE(cc.inside(Vec2(1.2, 0)));
}

TEST_CASE("superellipse derivative chain") {
    RadialBoundary se = RadialBoundary::superellipse(Vec2(0, 0), 1.3, 1.0, 4, true);
    for (double u : {0.05, 0.2, 0.33}) {
        double du = 1e-6;
        Vec2 fd = (se.gamma(u + du) - se.gamma(u - du)) / (2 * du);
        CHECK((fd - se.d1(u)).norm() < 1e-5);
        Vec2 fd2 = (se.d1(u + du) - se.d1(u - du)) / (2 * du);
        CHECK((fd2 - se.d2(u)).norm() < 1e-4);
    }
}

TEST_CASE("equal arclength sampling is uniform to a few percent") {
    EllipseBoundary ell(Vec2(0, 0), 2.0, 1.0, true);
    auto params = equal_arclength_params(ell, 0.05);
    double L = ell.total_length();
    double target = L / params.size();
    CHECK(target <= 0.05 * 1.01);
    for (size_t i = 0; i + 1 < params.size(); ++i) {
        double seg = (ell.gamma(params[i + 1]) - ell.gamma(params[i])).norm();
        CHECK(seg < 1.3 * target);
        CHECK(seg > 0.7 * target);
    }
}

TEST_CASE("graph patches reject non-adapted jets") {
    CHECK_THROWS_AS(BoundaryPatch::from_graph(2, PolyExpr::parse("0.1 + x1^2")),
                    ConfigError);
    CHECK_THROWS_AS(BoundaryPatch::from_graph(2, PolyExpr::parse("0.5*x1")), ConfigError);
    BoundaryPatch p = BoundaryPatch::from_graph(3, PolyExpr::parse("0.5*x1^2 + x1*x2"));
    MatN h = p.f_hess(VecN::Zero(2));
    CHECK(h(0, 0) == doctest::Approx(1.0));
    CHECK(h(0, 1) == doctest::Approx(1.0));
}
