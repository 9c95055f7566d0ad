// Gaussian rationals: the exact scalar field for complexified tensors.
#pragma once

#include "qtwist/rational.hpp"

namespace qtwist {

struct GaussRat {
    Rat re{0};
    Rat im{0};

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}  // NOLINT: implicit real embedding
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat unit_i() { return {Rat(0), Rat(1)}; }

    GaussRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }

    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        Rat n2 = o.norm2();
        if (is_zero(n2)) throw std::domain_error("GaussRat: division by zero");
        Rat r = (re * o.re + im * o.im) / n2;
        Rat i = (im * o.re - re * o.im) / n2;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline bool is_zero(const GaussRat& z) { return is_zero(z.re) && is_zero(z.im); }

inline std::string to_string(const GaussRat& z) {
    if (is_zero(z.im)) return to_string(z.re);
    std::string s = to_string(z.re);
    s += (sgn(z.im) < 0) ? " - " : " + ";
    Rat a = abs(z.im);
    s += to_string(a) + "i";
    return s;
}

}  // namespace qtwist
