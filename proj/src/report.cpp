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
#include "finslerfoot/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace ff {

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::GatedSkip: return "gated-skip";
        case CheckStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(fmt12(v).c_str(), nullptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    return out;
}

}  // namespace

void write_report_json(const std::string& path, const std::string& command,
                       const VerifyReport& report,
                       const std::vector<std::pair<std::string, std::string>>& summary) {
    nlohmann::ordered_json j;
    j["tool"] = "finslerfoot";
    j["command"] = command;
    nlohmann::ordered_json sm;
    for (const auto& [k, v] : summary) {
        // numeric strings become numbers so consumers need no coercion
        char* end = nullptr;
        double num = std::strtod(v.c_str(), &end);
        if (end && *end == '\0' && !v.empty() && std::isfinite(num)) {
            long long as_int = static_cast<long long>(num);
            if (v.find_first_of(".eE") == std::string::npos &&
                static_cast<double>(as_int) == num)
                sm[k] = as_int;
            else
                sm[k] = round12(num);
        } else {
            sm[k] = v;
        }
    }
    j["summary"] = sm;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    int npass = 0, nfail = 0;
    for (const CheckRecord& c : report.checks) {
        nlohmann::ordered_json rec;
        rec["name"] = c.name;
        rec["paper_anchor"] = c.paper_anchor;
        rec["status"] = check_status_name(c.status);
        rec["measured"] = std::isfinite(c.measured) ? nlohmann::ordered_json(round12(c.measured))
                                                    : nlohmann::ordered_json(fmt12(c.measured));
        rec["tolerance"] = round12(c.tolerance);
        if (!c.details.empty()) rec["details"] = c.details;
        checks.push_back(rec);
        if (c.status == CheckStatus::Pass) ++npass;
        if (c.status == CheckStatus::Fail) ++nfail;
    }
    j["checks"] = checks;
    j["counts"] = {{"pass", npass},
                   {"fail", nfail},
                   {"total", static_cast<int>(report.checks.size())}};
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_summary_txt(const std::string& path, const std::string& command,
                       const VerifyReport& report,
                       const std::vector<std::pair<std::string, std::string>>& summary) {
    auto out = open_out(path);
    out << "finslerfoot " << command << "\n";
    for (const auto& [k, v] : summary) out << "  " << k << " = " << v << "\n";
    if (!report.checks.empty()) {
        out << "checks:\n";
        for (const CheckRecord& c : report.checks) {
            char line[256];
            std::snprintf(line, sizeof line, "  %-28s %-14s measured=%-16s tol=%s\n",
                          c.name.c_str(), check_status_name(c.status),
                          fmt12(c.measured).c_str(), fmt12(c.tolerance).c_str());
            out << line;
            if (!c.details.empty()) out << "      " << c.details << "\n";
        }
    }
}

void write_field_csv(const std::string& path, const DistanceField& field) {
    auto out = open_out(path);
    out << "x,y,d,class,foot_u,s\n";
    for (int j = 0; j < field.ny; ++j) {
        for (int i = 0; i < field.nx; ++i) {
            const FieldCell& c = field.at(i, j);
            Vec2 p = field.position(i, j);
            out << fmt12(p.x()) << ',' << fmt12(p.y()) << ',' << fmt12(c.d) << ','
                << point_class_name(c.cls) << ',' << fmt12(c.foot_u) << ',' << fmt12(c.s)
                << '\n';
        }
    }
}

void write_class_ppm(const std::string& path, const DistanceField& field) {
    auto out = open_out(path);
    out << "P6\n" << field.nx << " " << field.ny << "\n255\n";
    auto rgb = [](PointClass c) -> std::array<unsigned char, 3> {
        switch (c) {
            case PointClass::Regular: return {255, 255, 255};
            case PointClass::Cut: return {255, 0, 0};
            case PointClass::BeyondConjugate: return {0, 0, 255};
            case PointClass::BoundaryBand: return {128, 128, 128};
            case PointClass::Outside: return {0, 0, 0};
            case PointClass::Unresolved: return {255, 255, 0};
        }
        return {0, 0, 0};
    };
    // top image row = largest y
    for (int j = field.ny - 1; j >= 0; --j)
        for (int i = 0; i < field.nx; ++i) {
            auto c = rgb(field.at(i, j).cls);
            out.write(reinterpret_cast<const char*>(c.data()), 3);
        }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    const int n = static_cast<int>(traj.samples.front().xi.size());
    out << "t";
    for (int i = 1; i <= n; ++i) out << ",xi_" << i;
    for (int i = 1; i <= n; ++i) out << ",v_" << i;
    out << "\n";
    for (const auto& s : traj.samples) {
        out << fmt12(s.t);
        for (int i = 0; i < n; ++i) out << ',' << fmt12(s.xi[i]);
        for (int i = 0; i < n; ++i) out << ',' << fmt12(s.v[i]);
        out << '\n';
    }
}

void write_conjugate_csv(const std::string& path,
                         const std::vector<ConjugateSweepRow>& rows) {
    auto out = open_out(path);
    out << "u,x,y,s_star\n";
    for (const auto& r : rows)
        out << fmt12(r.u) << ',' << fmt12(r.point.x()) << ',' << fmt12(r.point.y()) << ','
            << fmt12(r.s_star) << '\n';
}

void write_secondvar_csv(const std::string& path,
                         const std::vector<std::pair<double, double>>& lambda_flow) {
    auto out = open_out(path);
    out << "s_bar,lambda_min\n";
    for (const auto& [s, l] : lambda_flow) out << fmt12(s) << ',' << fmt12(l) << '\n';
}

void write_cut_csv(const std::string& path, const DistanceField& field) {
    auto out = open_out(path);
    out << "x,y,d,feet\n";
    for (int j = 0; j < field.ny; ++j)
        for (int i = 0; i < field.nx; ++i) {
            const FieldCell& c = field.at(i, j);
            if (c.cls != PointClass::Cut) continue;
            Vec2 p = field.position(i, j);
            out << fmt12(p.x()) << ',' << fmt12(p.y()) << ',' << fmt12(c.d) << ','
                << static_cast<int>(c.feet) << '\n';
        }
}

}  // namespace ff
