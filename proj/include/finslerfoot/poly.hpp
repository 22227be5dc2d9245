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
#ifndef FINSLERFOOT_POLY_HPP
#define FINSLERFOOT_POLY_HPP

#include <array>
#include <string>
#include <vector>

#include "finslerfoot/common.hpp"

namespace ff {

/// Multivariate polynomial in up to three variables (x1, x2, x3), stored as a
/// flat list of monomials. Config files describe position-dependent metric
/// coefficients with these, which keeps first and second position derivatives
/// exact without any symbolic machinery.
class PolyExpr {
public:
    struct Term {
        double c = 0.0;
        std::array<int, 3> e{0, 0, 0};
    };

    PolyExpr() = default;
    static PolyExpr constant(double c);
    static PolyExpr variable(int index);  // 0-based

    /// Parse "1 + 0.5*x1^2*x2 - x3" style expressions. Accepted tokens:
    /// numbers, x1/x2/x3 (aliases x/y/z), + - * ^ and parentheses.
    /// Throws ConfigError with a position diagnostic on malformed input.
    static PolyExpr parse(const std::string& text);

    double value(const VecN& x) const;
    VecN gradient(const VecN& x) const;   // size = x.size()
    MatN hessian(const VecN& x) const;

    PolyExpr operator+(const PolyExpr& o) const;
    PolyExpr operator-(const PolyExpr& o) const;
    PolyExpr operator*(const PolyExpr& o) const;
    PolyExpr pow(int k) const;

    /// Substitute x -> c + R*x (chart pullback). R is n x n, c is n.
    PolyExpr substitute_affine(const MatN& R, const VecN& c) const;

    bool is_constant() const;
    int max_variable() const;  // highest variable index used, -1 if constant
    const std::vector<Term>& terms() const { return terms_; }

private:
    void normalize();
    std::vector<Term> terms_;
};

}  // namespace ff

#endif
