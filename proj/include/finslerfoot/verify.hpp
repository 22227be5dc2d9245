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
#ifndef FINSLERFOOT_VERIFY_HPP
#define FINSLERFOOT_VERIFY_HPP

#include "finslerfoot/config.hpp"
#include "finslerfoot/report.hpp"

namespace ff {

/// Runs the full identity-check suite for one configuration. Each check is a
/// named record; gated checks degrade to "gated-skip" when the metric is not
/// in special form relative to the foot chart, and field-level checks are
/// "not-applicable" for patch-only boundaries.
VerifyReport run_verify(const RunConfig& cfg);

}  // namespace ff

#endif
