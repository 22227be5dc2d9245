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
#ifndef FINSLERFOOT_GEODESIC_HPP
#define FINSLERFOOT_GEODESIC_HPP

#include <optional>
#include <vector>

#include "finslerfoot/boundary.hpp"
#include "finslerfoot/metric.hpp"
#include "finslerfoot/normal_map.hpp"

namespace ff {

struct GeodesicState {
    VecN xi;
    VecN v;
};

struct TrajSample {
    double t;
    VecN xi, v, a;  // a = dv/dt, kept for dense cubic interpolation
};

/// Arclength-parametrized geodesic of the squared metric psi = phi^2.
/// phi(xi; v) stays 1 along trajectories started with unit speed.
struct Trajectory {
    std::vector<TrajSample> samples;
    double step = 0.0;
    bool forward = true;
    bool truncated = false;   // left the bounding box before reaching s_max

    double t_front() const { return samples.front().t; }
    double t_back() const { return samples.back().t; }
    double length() const { return std::abs(t_back() - t_front()); }
    const TrajSample& back() const { return samples.back(); }

    /// Cubic Hermite interpolation of (xi, v) at parameter t.
    GeodesicState at(double t) const;
};

/// Acceleration of the psi = phi^2 Euler-Lagrange system:
/// psi_vv dv = psi_xi - psi_vxi v.
VecN geodesic_accel(const MetricSpec& metric, const VecN& xi, const VecN& v);

/// (dxi, dv) of the first-order system.
std::pair<VecN, VecN> geodesic_rhs(const MetricSpec& metric, const GeodesicState& s);

/// Integrate with fixed-step RK4 over the signed parameter span t_len
/// (negative for backward runs). Stops early if the state leaves `box`.
Trajectory integrate(const MetricSpec& metric, const GeodesicState& start,
                     double t_start, double t_len, double step,
                     const Box* box = nullptr);

/// Adaptive Runge-Kutta-Fehlberg 4(5) alternative with local error control;
/// fixed-step RK4 remains the default because differenced bundles need a
/// consistent step sequence across neighboring shots.
Trajectory integrate_adaptive(const MetricSpec& metric, const GeodesicState& start,
                              double t_start, double t_len, double tol,
                              const Box* box = nullptr);

/// Normal geodesic from the boundary point patch(x').
Trajectory shoot_normal(const MetricSpec& metric, const BoundaryPatch& patch,
                        const VecN& xp, double s_max, double step,
                        const Box* box = nullptr,
                        const NormalOptions& nopts = {});

/// Completes the tangential direction components sigma' to a phi-unit vector
/// at X: solves phi(X; frame * (sigma', tau)) = 1 for tau > 0. Identity frame
/// by default. Throws NumericError when sigma' cannot be completed.
double tau_normalize(const MetricSpec& metric, const VecN& X, const VecN& sigma_prime,
                     const MatN* frame = nullptr);

/// Geodesic arriving at X with terminal velocity frame * (sigma', tau) at
/// parameter 1, integrated backward over t_len. Samples run from t = 1 down.
Trajectory shoot_backward(const MetricSpec& metric, const VecN& X,
                          const VecN& sigma_prime, double t_len, double step,
                          const MatN* frame = nullptr, const Box* box = nullptr);

/// max |phi(xi; v) - 1| over trajectory samples.
double unit_speed_drift(const MetricSpec& metric, const Trajectory& traj);

}  // namespace ff

#endif
