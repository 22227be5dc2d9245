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
#include "finslerfoot/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace ff {

PolyExpr PolyExpr::constant(double c) {
    PolyExpr p;
    if (c != 0.0) p.terms_.push_back({c, {0, 0, 0}});
    return p;
}

PolyExpr PolyExpr::variable(int index) {
    PolyExpr p;
    Term t;
    t.c = 1.0;
    t.e[index] = 1;
    p.terms_.push_back(t);
    return p;
}

void PolyExpr::normalize() {
    std::map<std::array<int, 3>, double> acc;
    for (const Term& t : terms_) acc[t.e] += t.c;
    terms_.clear();
    for (const auto& [e, c] : acc)
        if (c != 0.0) terms_.push_back({c, e});
}

double PolyExpr::value(const VecN& x) const {
    double s = 0.0;
    for (const Term& t : terms_) {
        double m = t.c;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < t.e[i]; ++k) m *= (i < x.size() ? x[i] : 0.0);
        s += m;
    }
    return s;
}

VecN PolyExpr::gradient(const VecN& x) const {
    const int n = static_cast<int>(x.size());
    VecN g = VecN::Zero(n);
    for (const Term& t : terms_) {
        for (int d = 0; d < n; ++d) {
            if (t.e[d] == 0) continue;
            double m = t.c * t.e[d];
            for (int i = 0; i < 3; ++i) {
                int p = t.e[i] - (i == d ? 1 : 0);
                for (int k = 0; k < p; ++k) m *= (i < n ? x[i] : 0.0);
            }
            g[d] += m;
        }
    }
    return g;
}

MatN PolyExpr::hessian(const VecN& x) const {
    const int n = static_cast<int>(x.size());
    MatN h = MatN::Zero(n, n);
    for (const Term& t : terms_) {
        for (int d1 = 0; d1 < n; ++d1) {
            for (int d2 = d1; d2 < n; ++d2) {
                int fac;
                std::array<int, 3> e = t.e;
                if (d1 == d2) {
                    if (e[d1] < 2) continue;
                    fac = e[d1] * (e[d1] - 1);
                    e[d1] -= 2;
                } else {
                    if (e[d1] < 1 || e[d2] < 1) continue;
                    fac = e[d1] * e[d2];
                    e[d1] -= 1;
                    e[d2] -= 1;
                }
                double m = t.c * fac;
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < e[i]; ++k) m *= (i < n ? x[i] : 0.0);
                h(d1, d2) += m;
                if (d1 != d2) h(d2, d1) += m;
            }
        }
    }
    return h;
}

PolyExpr PolyExpr::operator+(const PolyExpr& o) const {
    PolyExpr r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.normalize();
    return r;
}

PolyExpr PolyExpr::operator-(const PolyExpr& o) const {
    PolyExpr r = *this;
    for (Term t : o.terms_) {
        t.c = -t.c;
        r.terms_.push_back(t);
    }
    r.normalize();
    return r;
}

PolyExpr PolyExpr::operator*(const PolyExpr& o) const {
    PolyExpr r;
    for (const Term& a : terms_) {
        for (const Term& b : o.terms_) {
            Term t;
            t.c = a.c * b.c;
            for (int i = 0; i < 3; ++i) t.e[i] = a.e[i] + b.e[i];
            r.terms_.push_back(t);
        }
    }
    r.normalize();
    return r;
}

PolyExpr PolyExpr::pow(int k) const {
    PolyExpr r = constant(1.0);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
}

PolyExpr PolyExpr::substitute_affine(const MatN& R, const VecN& c) const {
    const int n = static_cast<int>(c.size());
    std::vector<PolyExpr> subs(3);
    for (int i = 0; i < 3; ++i) {
        if (i < n) {
            PolyExpr s = constant(c[i]);
            for (int j = 0; j < n; ++j)
                s = s + constant(R(i, j)) * variable(j);
            subs[i] = s;
        } else {
            subs[i] = constant(0.0);
        }
    }
    PolyExpr r;
    for (const Term& t : terms_) {
        PolyExpr m = constant(t.c);
        for (int i = 0; i < 3; ++i)
            if (t.e[i] > 0) m = m * subs[i].pow(t.e[i]);
        r = r + m;
    }
    return r;
}

bool PolyExpr::is_constant() const { return max_variable() < 0; }

int PolyExpr::max_variable() const {
    int m = -1;
    for (const Term& t : terms_)
        for (int i = 0; i < 3; ++i)
            if (t.e[i] > 0) m = std::max(m, i);
    return m;
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression error at position " + std::to_string(pos) +
                          " in \"" + s + "\": " + what);
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char ch) {
        skip_ws();
        if (pos < s.size() && s[pos] == ch) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    PolyExpr parse_expr() {
        PolyExpr acc = parse_term();
        for (;;) {
            if (eat('+'))
                acc = acc + parse_term();
            else if (eat('-'))
                acc = acc - parse_term();
            else
                return acc;
        }
    }
    PolyExpr parse_term() {
        PolyExpr acc = parse_factor();
        for (;;) {
            if (eat('*'))
                acc = acc * parse_factor();
            else
                return acc;
        }
    }
    PolyExpr parse_factor() {
        PolyExpr base = parse_base();
        if (eat('^')) {
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected integer exponent after '^'");
            int k = std::atoi(s.substr(start, pos - start).c_str());
            if (k > 16) fail("exponent too large (max 16)");
            return base.pow(k);
        }
        return base;
    }
    PolyExpr parse_base() {
        skip_ws();
        if (eat('-')) return PolyExpr::constant(-1.0) * parse_factor();
        if (eat('+')) return parse_factor();
        if (eat('(')) {
            PolyExpr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                    s[pos] == 'e' || s[pos] == 'E' ||
                    ((s[pos] == '+' || s[pos] == '-') && pos > start &&
                     (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
                ++pos;
            char* end = nullptr;
            double v = std::strtod(s.c_str() + start, &end);
            if (end != s.c_str() + pos) fail("malformed number");
            return PolyExpr::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])))) ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "x" || name == "x1") return PolyExpr::variable(0);
            if (name == "y" || name == "x2") return PolyExpr::variable(1);
            if (name == "z" || name == "x3") return PolyExpr::variable(2);
            fail("unknown identifier '" + name + "' (use x1, x2, x3)");
        }
        fail("unexpected character");
    }
};

}  // namespace

PolyExpr PolyExpr::parse(const std::string& text) {
    Parser p(text);
    PolyExpr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

}  // namespace ff
