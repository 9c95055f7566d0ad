// Exact rational scalars used throughout the library.
//
// All algebraic identities are checked over Q (or Q(i)); doubles appear
// only in the finite-difference oracle. GMP's mpq_class keeps every value
// canonical (denominator > 0, lowest terms) as long as values are built
// through make_rat / arithmetic, which is all this library does.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtwist {

using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline double to_double(const Rat& q) { return q.get_d(); }

inline std::string to_string(const Rat& q) { return q.get_str(); }

// Thrown when a product would exceed the configured polynomial degree
// bound. Identities must fail loudly instead of being silently truncated.
class DegreeOverflow : public std::runtime_error {
public:
    explicit DegreeOverflow(const std::string& what) : std::runtime_error(what) {}
};

// --- small exact 3-vectors (fiber coordinates of the twistor sphere) ---

using Vec3 = std::array<Rat, 3>;

inline Vec3 vec3(const Rat& a, const Rat& b, const Rat& c) { return {a, b, c}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

inline Vec3 operator*(const Rat& s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline Rat dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero(const Vec3& a) { return is_zero(a[0]) && is_zero(a[1]) && is_zero(a[2]); }

inline Vec3 zero3() { return {Rat(0), Rat(0), Rat(0)}; }

// Sign of the permutation (a b c) of (0 1 2); 0 when indices repeat.
inline int epsilon3(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace qtwist
