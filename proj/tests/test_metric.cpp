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

#include "finslerfoot/metric.hpp"

using namespace ff;

namespace {

MetricSpec randers_half(double beta) {
    PolyVector b;
    b.n = 2;
    b.entries = {PolyExpr::constant(beta), PolyExpr::constant(0.0)};
    return MetricSpec::randers(PolyMatrix::identity(2), b);
}

MetricSpec riemannian_diag(double g11, double g22) {
    PolyMatrix g = PolyMatrix::identity(2);
    g.at(0, 0) = PolyExpr::constant(g11);
    g.at(1, 1) = PolyExpr::constant(g22);
    return MetricSpec::riemannian(g);
}

std::vector<MetricSpec> catalog() {
    std::vector<MetricSpec> list;
    list.push_back(MetricSpec::euclidean(2));
    list.push_back(randers_half(0.5));
    list.push_back(riemannian_diag(4.0, 1.0));
    PolyMatrix g = PolyMatrix::identity(2);
    PolyExpr conf = PolyExpr::parse("1 + 0.1*x1^2");
    g.at(0, 0) = conf;
    g.at(1, 1) = conf;
    list.push_back(MetricSpec::riemannian(g));
    // position-dependent drift
    PolyVector b;
    b.n = 2;
    b.entries = {PolyExpr::parse("0.2 + 0.1*x2"), PolyExpr::parse("0.1*x1")};
    list.push_back(MetricSpec::randers(PolyMatrix::identity(2), b));
    list.push_back(MetricSpec::euclidean(3));
    return list;
}

double jet_block_dev(const MetricJet& a, const MetricJet& b) {
    return std::max({(a.d_xi - b.d_xi).cwiseAbs().maxCoeff(),
                     (a.d_v - b.d_v).cwiseAbs().maxCoeff(),
                     (a.d_xixi - b.d_xixi).cwiseAbs().maxCoeff(),
                     (a.d_xiv - b.d_xiv).cwiseAbs().maxCoeff(),
                     (a.d_vv - b.d_vv).cwiseAbs().maxCoeff()});
}

}  // namespace

TEST_CASE("eval on the documented examples") {
    CHECK(MetricSpec::euclidean(2).eval(Vec2(0, 0), Vec2(3, 4)) == doctest::Approx(5.0));
    CHECK(randers_half(0.5).eval(Vec2(7, -2), Vec2(1, 0)) == doctest::Approx(1.5));
    CHECK(riemannian_diag(4, 1).eval(Vec2(0, 0), Vec2(1, 1)) ==
          doctest::Approx(std::sqrt(5.0)));
    CHECK_THROWS_AS(MetricSpec::euclidean(2).eval(Vec2(0, 0), Vec2(0, 0)), DomainError);
}

TEST_CASE("euclidean jet in the axis direction") {
    MetricSpec m = MetricSpec::euclidean(2);
    MetricJet J = m.jet(Vec2(0.3, 0.4), Vec2(0, 1));
    CHECK((J.d_v - Vec2(0, 1)).norm() == doctest::Approx(0.0));
    MatN expect(2, 2);
    expect << 1, 0, 0, 0;
    CHECK((J.d_vv - expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK(J.d_xi.norm() == doctest::Approx(0.0));
}

TEST_CASE("randers gradient aligns with the second axis at the documented v") {
    MetricSpec m = randers_half(0.5);
    VecN v = Vec2(-2.0 / 3.0, 2.0 / std::sqrt(3.0));
    MetricJet J = m.jet(Vec2(0.2, -0.7), v);
    CHECK(std::abs(J.d_v[0]) < 1e-14);
    CHECK(J.d_v[1] == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("euler identities and hessian rank across the catalog") {
    Rng rng(11);
    for (const MetricSpec& m : catalog()) {
        const int n = m.dimension();
        for (int k = 0; k < 100; ++k) {
            VecN xi(n), v(n);
            for (int i = 0; i < n; ++i) {
                xi[i] = rng.uniform(-1, 1);
                v[i] = rng.centered();
            }
            if (v.norm() < 1e-3) continue;
            MetricJet J = m.jet(xi, v);
            CHECK(std::abs(J.d_v.dot(v) - J.phi) < 1e-10);
            CHECK((J.d_vv * v).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((J.d_xiv * v - J.d_xi).cwiseAbs().maxCoeff() < 1e-10);

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J.d_vv);
            CHECK(es.eigenvalues()[0] > -1e-9);
            CHECK(std::abs(es.eigenvalues()[0]) < 1e-9);
            CHECK(es.eigenvalues()[1] > 1e-9);

            MatN psi_vv = 2.0 * (J.phi * J.d_vv + J.d_v * J.d_v.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(psi_vv);
            CHECK(es2.eigenvalues().minCoeff() > 0.0);
        }
    }
}

TEST_CASE("homogeneity of eval is exact in scale") {
    Rng rng(5);
    for (const MetricSpec& m : catalog()) {
        const int n = m.dimension();
        for (int k = 0; k < 50; ++k) {
            VecN xi(n), v(n);
            for (int i = 0; i < n; ++i) {
                xi[i] = rng.uniform(-1, 1);
                v[i] = rng.centered();
            }
            if (v.norm() < 1e-3) continue;
            double lam = rng.uniform(0.1, 4.0);
            CHECK(m.eval(xi, lam * v) ==
                  doctest::Approx(lam * m.eval(xi, v)).epsilon(1e-13));
        }
    }
}

TEST_CASE("analytic jet agrees with the finite-difference oracle") {
    Rng rng(23);
    for (const MetricSpec& m : catalog()) {
        const int n = m.dimension();
        double worst = 0.0;
        for (int k = 0; k < 40; ++k) {
            VecN xi(n), v(n);
            for (int i = 0; i < n; ++i) {
                xi[i] = rng.uniform(-1, 1);
                v[i] = rng.centered();
            }
            if (v.norm() < 0.2) continue;
            MetricJet J = m.jet(xi, v);
            MetricJet F = m.jet_fd(xi, v, 1e-4);
            worst = std::max(worst, jet_block_dev(J, F));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("fd jet scaling: the v-Hessian is homogeneous of degree -1") {
    MetricSpec m = randers_half(0.5);
    VecN xi = Vec2(0.1, 0.2), v = Vec2(0.8, -0.5);
    MetricJet a = m.jet_fd(xi, 2.0 * v, 1e-4);
    MetricJet b = m.jet_fd(xi, v, 1e-4);
    CHECK((a.d_vv - 0.5 * b.d_vv).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("richardson fd jet tightens the plain one") {
    PolyMatrix g = PolyMatrix::identity(2);
    g.at(0, 0) = PolyExpr::parse("1 + 0.3*x1^2 + 0.1*x2^2");
    MetricSpec m = MetricSpec::riemannian(g);
    VecN xi = Vec2(0.4, -0.3), v = Vec2(1.0, 0.7);
    MetricJet J = m.jet(xi, v);
    MetricJet plain = m.jet_fd(xi, v, 1e-3);
    MetricJet rich = m.jet_fd(xi, v, 1e-3, true);
    CHECK(jet_block_dev(J, rich) < jet_block_dev(J, plain));
    CHECK(jet_block_dev(J, rich) < 5e-9);
}

TEST_CASE("special form: euclidean passes with zero violation") {
    SpecialFormReport r = MetricSpec::euclidean(2).check_special_form(2.0, 1e-12);
    CHECK(r.pass);
    CHECK(r.max_violation() == doctest::Approx(0.0));
}

TEST_CASE("special form: horizontal drift fails the gradient identity") {
    SpecialFormReport r = randers_half(0.5).check_special_form(1.0, 1e-8);
    CHECK_FALSE(r.pass);
    CHECK(r.v_dv == doctest::Approx(0.5));  // phi_{v_1}(t e_n; e_n) = beta
}

TEST_CASE("special form: coupled riemannian fails only the mixed identity for t > 0") {
    PolyMatrix g = PolyMatrix::identity(2);
    g.at(0, 1) = PolyExpr::parse("0.3*x1*x2");
    g.at(1, 0) = g.at(0, 1);
    MetricSpec m = MetricSpec::riemannian(g);
    SpecialFormReport r = m.check_special_form(1.0, 1e-8);
    CHECK_FALSE(r.pass);
    CHECK(r.v_dxiv == doctest::Approx(0.3).epsilon(1e-9));  // phi_{xi_1 v_1} = 0.3 t
    CHECK(r.v_unit < 1e-12);
    CHECK(r.v_dxi < 1e-12);
    CHECK(r.v_dv < 1e-12);
    // at t = 0 the mixed block vanishes
    MetricJet J0 = m.jet(Vec2(0, 0), Vec2(0, 1));
    CHECK(J0.d_xiv.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("special form: normalized vertical drift passes") {
    // phi = (|v| + beta v_2) / (1 + beta)
    double beta = 0.25;
    PolyMatrix a = PolyMatrix::identity(2);
    double s = 1.0 / ((1 + beta) * (1 + beta));
    a.at(0, 0) = PolyExpr::constant(s);
    a.at(1, 1) = PolyExpr::constant(s);
    PolyVector b;
    b.n = 2;
    b.entries = {PolyExpr::constant(0.0), PolyExpr::constant(beta / (1 + beta))};
    MetricSpec m = MetricSpec::randers(std::move(a), std::move(b));
    SpecialFormReport r = m.check_special_form(2.0, 1e-10);
    CHECK(r.pass);
}

TEST_CASE("chart pullback matches rotated evaluation") {
    PolyMatrix g = PolyMatrix::identity(2);
    g.at(0, 0) = PolyExpr::parse("1 + 0.2*x1^2");
    g.at(0, 1) = PolyExpr::parse("0.1*x2");
    g.at(1, 0) = g.at(0, 1);
    g.at(1, 1) = PolyExpr::parse("1 + 0.05*x2^2");
    MetricSpec m = MetricSpec::riemannian(g);
    double th = 0.9;
    MatN R(2, 2);
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    VecN c = Vec2(0.3, -0.2);
    MetricSpec pulled = m.transformed(R, c);
    Rng rng(17);
    for (int k = 0; k < 30; ++k) {
        VecN x = Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1));
        VecN w = Vec2(rng.centered(), rng.centered());
        if (w.norm() < 1e-3) continue;
        CHECK(pulled.eval(x, w) ==
              doctest::Approx(m.eval(c + R * x, R * w)).epsilon(1e-13));
    }
}

TEST_CASE("validation flags a randers violation") {
    PolyVector b;
    b.n = 2;
    b.entries = {PolyExpr::parse("1.2*x1"), PolyExpr::constant(0.0)};
    MetricSpec bad = MetricSpec::randers(PolyMatrix::identity(2), b);
    Rng rng(1);
    MetricValidityReport rep = bad.validate(Box::square2(-1, 1, -1, 1), 200, rng);
    CHECK_FALSE(rep.ok);
    MetricValidityReport good =
        MetricSpec::euclidean(2).validate(Box::square2(-1, 1, -1, 1), 100, rng);
    CHECK(good.ok);
}
