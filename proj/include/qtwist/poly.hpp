// Multivariate polynomials with exact rational coefficients.
//
// These are the only "functions" the library knows: every field on the
// model (1-forms, curvature entries, sections over the twistor space) is
// a polynomial, so identity checking reduces to exact zero-testing of
// coefficients. Monomials are exponent vectors; zero coefficients are
// never stored.
#pragma once

#include "qtwist/rational.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

namespace qtwist {

using Mono = std::vector<uint8_t>;

inline int mono_degree(const Mono& m) {
    int d = 0;
    for (uint8_t e : m) d += e;
    return d;
}

class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nv_(nvars) {}

    static Poly constant(int nvars, Rat c) {
        Poly p(nvars);
        if (!qtwist::is_zero(c)) p.t_[Mono(nvars, 0)] = std::move(c);
        return p;
    }
    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly variable(int nvars, int i) {
        Poly p(nvars);
        Mono m(nvars, 0);
        m[i] = 1;
        p.t_[std::move(m)] = Rat(1);
        return p;
    }

    int nvars() const { return nv_; }
    bool is_zero() const { return t_.empty(); }
    int degree() const {
        int d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, mono_degree(m));
        return d;
    }
    size_t term_count() const { return t_.size(); }
    const std::map<Mono, Rat>& terms() const { return t_; }

    void add_term(const Mono& m, const Rat& c) {
        if (qtwist::is_zero(c)) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (qtwist::is_zero(it->second)) t_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_vars(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_vars(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r(a.nv_);
        for (const auto& [m, c] : a.t_) r.t_[m] = -c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_vars(b);
        Poly r(a.nv_);
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                Mono m(a.nv_);
                for (int i = 0; i < a.nv_; ++i)
                    m[i] = static_cast<uint8_t>(ma[i] + mb[i]);
                r.add_term(m, ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Rat& s, const Poly& a) {
        Poly r(a.nv_);
        if (qtwist::is_zero(s)) return r;
        for (const auto& [m, c] : a.t_) r.t_[m] = s * c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Rat& s) { return s * a; }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nv_ == b.nv_ && a.t_ == b.t_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative(int var) const {
        Poly r(nv_);
        for (const auto& [m, c] : t_) {
            if (m[var] == 0) continue;
            Mono d = m;
            d[var] -= 1;
            r.add_term(d, c * Rat(static_cast<long>(m[var])));
        }
        return r;
    }

    Rat eval(std::span<const Rat> x) const {
        Rat acc(0);
        for (const auto& [m, c] : t_) {
            Rat term = c;
            for (int i = 0; i < nv_; ++i)
                for (int e = 0; e < m[i]; ++e) term *= x[i];
            acc += term;
        }
        return acc;
    }

    double eval_double(std::span<const double> x) const {
        double acc = 0.0;
        for (const auto& [m, c] : t_) {
            double term = to_double(c);
            for (int i = 0; i < nv_; ++i)
                for (int e = 0; e < m[i]; ++e) term *= x[i];
            acc += term;
        }
        return acc;
    }

    // Extends a polynomial in the first nvars() variables to a larger ring
    // (used to lift base fields to the twistor space's fiber variables).
    Poly lift(int new_nvars) const {
        Poly r(new_nvars);
        for (const auto& [m, c] : t_) {
            Mono e(new_nvars, 0);
            for (int i = 0; i < nv_; ++i) e[i] = m[i];
            r.t_[std::move(e)] = c;
        }
        return r;
    }

    std::string str(const std::string& var_prefix = "x") const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : t_) {
            if (!first) os << " + ";
            first = false;
            os << to_string(c);
            for (int i = 0; i < nv_; ++i) {
                if (m[i] == 0) continue;
                os << "*" << var_prefix << (i + 1);
                if (m[i] > 1) os << "^" << static_cast<int>(m[i]);
            }
        }
        return os.str();
    }

private:
    void check_vars(const Poly& o) const {
        if (nv_ != o.nv_)
            throw std::invalid_argument("Poly: mixed variable counts");
    }

    int nv_ = 0;
    std::map<Mono, Rat> t_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

// Degree-checked product: the library's degree bound exists so that no
// identity is ever "verified" after silent truncation.
inline Poly mul_checked(const Poly& a, const Poly& b, int degree_bound) {
    if (!a.is_zero() && !b.is_zero() && a.degree() + b.degree() > degree_bound)
        throw DegreeOverflow("polynomial product exceeds degree bound " +
                             std::to_string(degree_bound));
    return a * b;
}

}  // namespace qtwist
