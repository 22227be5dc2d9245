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
#ifndef FINSLERFOOT_COMMON_HPP
#define FINSLERFOOT_COMMON_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ff {

// Ambient dimension is 2 or 3; small fixed-capacity types avoid heap traffic
// in the ODE inner loops.
inline constexpr int kMaxDim = 3;

using VecN = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using MatN = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Axis-aligned box, used for trajectory truncation and grid extents.
struct Box {
    VecN lo, hi;

    bool contains(const VecN& x) const {
        for (int i = 0; i < x.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
    static Box square2(double xmin, double xmax, double ymin, double ymax) {
        Box b;
        b.lo = Vec2(xmin, ymin);
        b.hi = Vec2(xmax, ymax);
        return b;
    }
};

// Deterministic RNG with platform-independent uniforms (std distributions are
// implementation-defined, which would break byte-identical reports).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // [0,1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    // Symmetric triangular-ish smooth surrogate for gaussians; exact
    // distribution shape does not matter for property sampling.
    double centered() { return uniform(-1.0, 1.0) + uniform(-1.0, 1.0); }

private:
    std::uint64_t state_;
};

inline VecN unit_axis(int n, int k) {
    VecN e = VecN::Zero(n);
    e[k] = 1.0;
    return e;
}

}  // namespace ff

#endif
