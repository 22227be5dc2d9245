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
#ifndef FINSLERFOOT_REPORT_HPP
#define FINSLERFOOT_REPORT_HPP

#include <string>
#include <vector>

#include "finslerfoot/distance_field.hpp"
#include "finslerfoot/geodesic.hpp"

namespace ff {

enum class CheckStatus { Pass, Fail, GatedSkip, NotApplicable };

const char* check_status_name(CheckStatus s);

struct CheckRecord {
    std::string name;
    std::string paper_anchor;
    CheckStatus status = CheckStatus::Fail;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string details;
};

struct VerifyReport {
    std::vector<CheckRecord> checks;
    bool all_ok() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Fail) return false;
        return true;
    }
};

/// Round to 12 significant digits (the precision everything is printed at,
/// which keeps repeated runs byte-identical).
double round12(double v);
std::string fmt12(double v);

void write_report_json(const std::string& path, const std::string& command,
                       const VerifyReport& report,
                       const std::vector<std::pair<std::string, std::string>>& summary);
void write_summary_txt(const std::string& path, const std::string& command,
                       const VerifyReport& report,
                       const std::vector<std::pair<std::string, std::string>>& summary);

void write_field_csv(const std::string& path, const DistanceField& field);
void write_class_ppm(const std::string& path, const DistanceField& field);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

struct ConjugateSweepRow {
    double u;
    Vec2 point;
    double s_star;  // +inf when the ray never focuses
};
void write_conjugate_csv(const std::string& path, const std::vector<ConjugateSweepRow>& rows);

void write_secondvar_csv(const std::string& path,
                         const std::vector<std::pair<double, double>>& lambda_flow);

void write_cut_csv(const std::string& path, const DistanceField& field);

}  // namespace ff

#endif
