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
#ifndef FINSLERFOOT_BOUNDARY_HPP
#define FINSLERFOOT_BOUNDARY_HPP

#include <memory>
#include <utility>

#include "finslerfoot/common.hpp"
#include "finslerfoot/poly.hpp"

namespace ff {

/// Local graph over the chart tangent plane: height f(x') with exact gradient
/// and Hessian. x' lives in R^{n-1}.
class GraphFn {
public:
    virtual ~GraphFn() = default;
    virtual double value(const VecN& xp) const = 0;
    virtual VecN gradient(const VecN& xp) const = 0;
    virtual MatN hessian(const VecN& xp) const = 0;
};

class PolyGraph final : public GraphFn {
public:
    explicit PolyGraph(PolyExpr f) : f_(std::move(f)) {}
    double value(const VecN& xp) const override { return f_.value(xp); }
    VecN gradient(const VecN& xp) const override { return f_.gradient(xp); }
    MatN hessian(const VecN& xp) const override { return f_.hessian(xp); }

private:
    PolyExpr f_;
};

/// Boundary patch y = origin + R * (x', f(x')). At an adapted base point,
/// f(0') = 0 and grad f(0') = 0'; the chart height axis R e_n is the
/// Euclidean interior normal. D2f >= 0 means the boundary curves toward the
/// interior (unit disk interior: D2f(0') = +1/R).
struct BoundaryPatch {
    int n = 0;
    MatN R;       // chart -> ambient, proper rotation
    VecN origin;
    std::shared_ptr<const GraphFn> f;

    VecN ambient(const VecN& xp) const;
    double height(const VecN& xp) const { return f->value(xp); }
    VecN f_grad(const VecN& xp) const { return f->gradient(xp); }
    MatN f_hess(const VecN& xp) const { return f->hessian(xp); }
    /// Ambient tangent R (e_alpha + f_alpha e_n); not normalized.
    VecN tangent(int alpha, const VecN& xp) const;
    /// Euclidean interior unit normal in ambient coordinates.
    VecN interior_normal(const VecN& xp) const;

    /// Patch adapted directly from an (f(0)=0, grad f(0)=0) graph with the
    /// identity frame; throws ConfigError if the jet is not adapted.
    static BoundaryPatch from_graph(int n, PolyExpr f);
};

/// Parametrized boundary in the plane. Curves are regular; closed ones are
/// 1-periodic in u, the open line uses a finite parameter window for sweeps.
class BoundaryCurve {
public:
    virtual ~BoundaryCurve() = default;
    virtual Vec2 gamma(double u) const = 0;
    virtual Vec2 d1(double u) const = 0;
    virtual Vec2 d2(double u) const = 0;
    virtual Vec2 d3(double u) const = 0;
    virtual bool closed() const = 0;
    virtual std::pair<double, double> param_range() const = 0;
    virtual bool inside(const Vec2& X) const = 0;
    /// True if the interior lies to the left of the direction of travel.
    virtual bool interior_left() const = 0;

    Vec2 unit_tangent(double u) const;
    /// Euclidean interior unit normal.
    Vec2 interior_normal(double u) const;
    /// Signed curvature, positive when curving toward the interior.
    double curvature_toward_interior(double u) const;
    double total_length(int quad_samples = 4096) const;
};

class CircleBoundary final : public BoundaryCurve {
public:
    CircleBoundary(Vec2 center, double radius, bool interior_inside);
    Vec2 gamma(double u) const override;
    Vec2 d1(double u) const override;
    Vec2 d2(double u) const override;
    Vec2 d3(double u) const override;
    bool closed() const override { return true; }
    std::pair<double, double> param_range() const override { return {0.0, 1.0}; }
    bool inside(const Vec2& X) const override;
    bool interior_left() const override { return interior_inside_; }

private:
    Vec2 c_;
    double r_;
    bool interior_inside_;
};

class EllipseBoundary final : public BoundaryCurve {
public:
    EllipseBoundary(Vec2 center, double a, double b, bool interior_inside);
    Vec2 gamma(double u) const override;
    Vec2 d1(double u) const override;
    Vec2 d2(double u) const override;
    Vec2 d3(double u) const override;
    bool closed() const override { return true; }
    std::pair<double, double> param_range() const override { return {0.0, 1.0}; }
    bool inside(const Vec2& X) const override;
    bool interior_left() const override { return interior_inside_; }

private:
    Vec2 c_;
    double a_, b_;
    bool interior_inside_;
};

/// Star-shaped curve r(theta) about a center: superellipse (even exponent)
/// and cosine-perturbed circle.
class RadialBoundary final : public BoundaryCurve {
public:
    enum class Shape { Superellipse, CosineCircle };
    /// Superellipse: |x/a|^p + |y/b|^p = 1, p even >= 2.
    static RadialBoundary superellipse(Vec2 center, double a, double b, int p,
                                       bool interior_inside);
    /// r(theta) = radius (1 + amplitude cos(lobes * theta)).
    static RadialBoundary cosine_circle(Vec2 center, double radius, double amplitude,
                                        int lobes, bool interior_inside);

    Vec2 gamma(double u) const override;
    Vec2 d1(double u) const override;
    Vec2 d2(double u) const override;
    Vec2 d3(double u) const override;
    bool closed() const override { return true; }
    std::pair<double, double> param_range() const override { return {0.0, 1.0}; }
    bool inside(const Vec2& X) const override;
    bool interior_left() const override { return interior_inside_; }

private:
    RadialBoundary() = default;
    // radius jet r(theta) with three derivatives
    struct RJet { double r, r1, r2, r3; };
    RJet radius_jet(double theta) const;

    Shape shape_ = Shape::CosineCircle;
    Vec2 c_{0, 0};
    double a_ = 1, b_ = 1, amp_ = 0;
    int p_ = 2, lobes_ = 0;
    bool interior_inside_ = true;
};

class LineBoundary final : public BoundaryCurve {
public:
    /// Line through `point` with unit `interior_normal`; parametrized by
    /// arclength along the tangent. `window` bounds parameter sweeps.
    LineBoundary(Vec2 point, Vec2 interior_normal, double window = 4.0);
    Vec2 gamma(double u) const override;
    Vec2 d1(double u) const override;
    Vec2 d2(double u) const override;
    Vec2 d3(double u) const override;
    bool closed() const override { return false; }
    std::pair<double, double> param_range() const override { return {-window_, window_}; }
    bool inside(const Vec2& X) const override;
    bool interior_left() const override;
    void set_window(double w) { window_ = w; }

private:
    Vec2 p0_, nu_, t_;
    double window_;
};

/// Graph patch at gamma(u): base point on the curve, height axis along the
/// interior normal. f(0)=0 and f'(0)=0 hold by construction; f''(0) is the
/// curvature toward the interior. The patch borrows the curve, which must
/// stay alive while the patch is in use.
BoundaryPatch adapted_chart(const BoundaryCurve& curve, double u);

Vec2 boundary_normal(const BoundaryCurve& curve, double u);

/// Interior normal at an ambient point expected to lie on the curve; throws
/// DomainError if the point is farther than tol from it.
Vec2 normal_at_point(const BoundaryCurve& curve, const Vec2& X, double tol);

/// Parameter of the closest curve point (local Newton from seed).
double project_to_curve(const BoundaryCurve& curve, const Vec2& X, double u_seed);

/// Parameters of approximately equally spaced (arclength) boundary samples.
std::vector<double> equal_arclength_params(const BoundaryCurve& curve, double spacing);

}  // namespace ff

#endif
