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
#ifndef FINSLERFOOT_NORMAL_MAP_HPP
#define FINSLERFOOT_NORMAL_MAP_HPP

#include "finslerfoot/boundary.hpp"
#include "finslerfoot/metric.hpp"

namespace ff {

/// Finsler-normal initial data at a boundary point: phi(y; V) = 1, grad_v phi
/// parallel to the Euclidean interior normal, V pointing inward. DV holds the
/// derivative of V with respect to the chart coordinates x' (ambient rows,
/// one column per chart direction); empty until normal_sensitivity fills it.
struct NormalData {
    VecN y;
    VecN V;
    Eigen::MatrixXd DV;   // n x (n-1)
    double residual = 0.0;
    int iters = 0;
};

struct NormalOptions {
    double tol = 1e-13;
    int max_iters = 60;
    int fallback_scan = 256;  // coarse indicatrix search if Newton stalls
};

/// Solve the normal-direction system at y = patch(x'). Newton from V0 = nu;
/// falls back to a coarse directional scan before giving up. Throws
/// NumericError on divergence and DomainError on a wrong-branch solution.
NormalData solve_normal(const MetricSpec& metric, const BoundaryPatch& patch,
                        const VecN& xp, const NormalOptions& opts = {});

/// solve_normal plus DV from implicit differentiation of the normal system.
NormalData normal_sensitivity(const MetricSpec& metric, const BoundaryPatch& patch,
                              const VecN& xp, const NormalOptions& opts = {});

/// Central-difference DV, the oracle for the implicit-differentiation route.
Eigen::MatrixXd normal_sensitivity_fd(const MetricSpec& metric,
                                      const BoundaryPatch& patch, const VecN& xp,
                                      double h, const NormalOptions& opts = {});

/// Residual of the tangential-sensitivity identity that ties the chart second
/// fundamental form to DV through the v-Hessian of phi, valid for metrics in
/// special form relative to the patch frame:
///   (R' phi_vv R)_{tangential} * (R' DV)_{tangential} + D2f(0') = 0.
double sensitivity_identity_residual(const MetricSpec& metric,
                                     const BoundaryPatch& patch,
                                     const NormalData& nd);

}  // namespace ff

#endif
