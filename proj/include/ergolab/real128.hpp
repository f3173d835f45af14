#pragma once

#include <quadmath.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ergolab {

// 113-bit-mantissa real used wherever circle arithmetic must stay exact to
// representation (continued fractions, tower arcs). Dynamics hot loops use
// long double / double instead.
using Real128 = __float128;

inline double to_double(Real128 x) { return static_cast<double>(x); }

inline Real128 qfloor(Real128 x) { return floorq(x); }
inline Real128 qabs(Real128 x) { return fabsq(x); }
inline Real128 qsqrt(Real128 x) { return sqrtq(x); }

// fractional part in [0, 1)
inline Real128 qfrac(Real128 x) {
    Real128 f = x - floorq(x);
    if (f >= Real128(1)) f -= Real128(1);
    if (f < Real128(0)) f += Real128(1);
    return f;
}

inline Real128 qparse(const std::string& s) {
    const char* p = s.c_str();
    char* end = nullptr;
    Real128 v = strtoflt128(p, &end);
    if (end == p) throw std::invalid_argument("not a number: " + s);
    return v;
}

inline std::string qformat(Real128 x, int digits = 36) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
    return std::string(buf);
}

// hex form, round-trips exactly through qparse
inline std::string qformat_hex(Real128 x) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%Qa", x);
    return std::string(buf);
}

inline Real128 golden_alpha() { return (sqrtq(Real128(5)) - Real128(1)) / Real128(2); }

// long-double fractional part for orbit accumulators
inline long double lfrac(long double x) {
    long double f = x - floorl(x);
    if (f >= 1.0L) f -= 1.0L;
    if (f < 0.0L) f += 1.0L;
    return f;
}

}  // namespace ergolab
