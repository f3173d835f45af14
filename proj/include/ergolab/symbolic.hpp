#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/real128.hpp"
#include "ergolab/rotation.hpp"

namespace ergolab {

// A point of one of the shipped binary subshifts, addressed by its seed.
// Sturmian: the coding of the circle point rho (lower or upper convention).
// Thue-Morse: sigma^shift of the two-sided fixed point w, optionally
// complemented; w(n) = t(n) for n>=0 and w(n) = 1-t(-1-n) for n<0, where
// t(k) is the parity of the binary digit sum.
struct SymbolicPoint {
    Real128 rho = 0;
    bool upper = false;
    int64_t shift = 0;
    bool complement = false;
};

class SymbolicSystem {
  public:
    enum class Kind { Sturmian, ThueMorse };

    static SymbolicSystem sturmian(Real128 alpha, bool upper_default = false);
    static SymbolicSystem thue_morse();

    Kind kind() const { return kind_; }
    Real128 alpha_q() const { return alpha_; }

    int coord(const SymbolicPoint& x, int64_t n) const;
    // word over [m, n); empty range gives the empty word
    std::string word(const SymbolicPoint& x, int64_t m, int64_t n) const;

    SymbolicPoint point_sturmian(Real128 rho, bool upper = false) const;
    SymbolicPoint point_tm(int64_t shift, bool complement = false) const;

    // shift map on seeds: T(x) has coordinates x[n+1]
    SymbolicPoint advance(const SymbolicPoint& x) const;

  private:
    Kind kind_ = Kind::ThueMorse;
    Real128 alpha_ = 0;
    bool upper_default_ = false;
};

inline std::string symbolic_point(const SymbolicSystem& sys, const SymbolicPoint& seed,
                                  int64_t m, int64_t n) {
    return sys.word(seed, m, n);
}

// Truncated product metric d(u,v) = (1/W) * sum_{|k|<=K} 2^{-|k|} |u_k - v_k|,
// normalized to diameter 1.
constexpr int kSymbolicMetricRadius = 64;
double symbolic_dist(const SymbolicSystem& sys, const SymbolicPoint& x, const SymbolicPoint& y);

// d(T^i x, T^i y) for i in [0, n); O(n) via rolling window sums
std::vector<double> symbolic_distance_sequence(const SymbolicSystem& sys, const SymbolicPoint& x,
                                               const SymbolicPoint& y, int64_t n);

// Fiber of the factor map (Sturmian subshift) -> (circle, R_alpha) over z:
// one coding generically, the lower/upper pair when z lies on the backward
// orbit of the partition endpoints (searched over |m| <= window).
struct SturmianFiber {
    int cardinality = 1;
    std::vector<SymbolicPoint> points;
    int64_t critical_index = 0;  // m with z = frac(-m*alpha), if cardinality 2
};
SturmianFiber sturmian_fiber(const RotationSystem& rot, Real128 z, int64_t window = 256);

// distinct factors of length L seen in x[from..from+span)
int64_t factor_count(const SymbolicSystem& sys, const SymbolicPoint& x, int L, int64_t from,
                     int64_t span);

// TM complement-shift pairs that agree on a long central window: small d,
// orbit-average distance bounded below. Returns the shift with the largest
// agreement radius within the search range.
struct TmAdversary {
    int64_t shift = 0;
    int agreement_radius = 0;
};
TmAdversary tm_best_complement_agreement(const SymbolicSystem& sys, int64_t max_shift);

}  // namespace ergolab
