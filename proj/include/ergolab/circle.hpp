#pragma once

#include <cmath>

namespace ergolab {

// Point of the circle R/Z, kept in [0, 1).
struct CirclePoint {
    double value = 0.0;
};

inline double wrap01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;  // x slightly below an integer can round up
    if (f < 0.0) f += 1.0;
    return f;
}

inline CirclePoint circle_point(double x) { return CirclePoint{wrap01(x)}; }

// d(a,b) = min(|a-b|, 1-|a-b|), diameter 1/2
inline double circle_dist(double a, double b) {
    double t = std::fabs(a - b);
    if (t > 0.5) t = 1.0 - t;
    return t;
}

inline double circle_dist(CirclePoint a, CirclePoint b) { return circle_dist(a.value, b.value); }

inline constexpr double kCircleDiameter = 0.5;

// Half-open arc [lo, lo+len) mod 1, len in [0, 1].
struct CircleArc {
    double lo = 0.0;
    double len = 0.0;

    bool contains(double x) const {
        double d = x - lo;
        d -= std::floor(d);
        return d < len;
    }
};

}  // namespace ergolab
