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
#ifndef FINSLERFOOT_JACOBI_HPP
#define FINSLERFOOT_JACOBI_HPP

#include <optional>
#include <vector>

#include "finslerfoot/geodesic.hpp"

namespace ff {

/// One boundary Jacobi field sampled along the base trajectory grid.
struct JacobiField {
    std::vector<VecN> zeta;
    std::vector<VecN> zeta_dot;
};

/// Boundary Jacobi fields along a normal geodesic plus the boundary
/// exponential Jacobian M(s) whose columns are the n-1 foot-point
/// sensitivities and the velocity. Conjugate points are the zeros of det M.
struct JacobiBundle {
    Trajectory base;
    MatN chart_R;                     // foot patch frame
    std::vector<JacobiField> fields;  // size n-1, aligned with base.samples

    int dim() const { return static_cast<int>(base.samples.front().xi.size()); }
    MatN M(size_t i) const;           // at sample i
    MatN M_at(double s) const;        // cubic Hermite between samples
    double detM_at(double s) const;
    /// Ratio of extreme singular values of M(s); degeneracy monitor.
    double condition_at(double s) const;
};

struct JacobiOptions {
    double fd_offset = 1e-3;   // foot-point offset for bundle differencing
    bool richardson = true;
    double step = 1e-3;
    int scan_points = 200;     // det M sign-scan grid
    double bisect_tol = 1e-9;
};

/// Jacobi fields by central differencing of neighboring normal shots,
/// Richardson-extrapolated by default.
JacobiBundle jacobi_bundle_fd(const MetricSpec& metric, const BoundaryPatch& patch,
                              const VecN& xp, double s_max,
                              const JacobiOptions& opts = {});

/// Linearized-geodesic route: integrates the variational equation along the
/// base trajectory (coefficients by directional differencing of the
/// acceleration). Independent cross-check of the bundle.
JacobiField jacobi_ode(const MetricSpec& metric, const Trajectory& base,
                       const VecN& zeta0, const VecN& dzeta0);

/// First s in (0, s_max] where det M vanishes; nullopt when the rays never
/// focus in range.
std::optional<double> conjugate_distance_from_bundle(const JacobiBundle& bundle,
                                                     const JacobiOptions& opts = {});
std::optional<double> conjugate_distance(const MetricSpec& metric,
                                         const BoundaryPatch& patch, const VecN& xp,
                                         double s_max, const JacobiOptions& opts = {});

/// Combination coefficients (boundary columns then velocity column) spanning
/// the kernel of M(s_star), normalized to unit norm.
Eigen::VectorXd degenerate_kernel(const JacobiBundle& bundle, double s_star);

}  // namespace ff

#endif
