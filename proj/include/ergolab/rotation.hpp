#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/circle.hpp"
#include "ergolab/continued_fraction.hpp"
#include "ergolab/real128.hpp"

namespace ergolab {

// S(z) = (z + alpha) mod 1
inline CirclePoint rotation_step(CirclePoint z, double alpha) {
    return circle_point(z.value + alpha);
}

// Strictly ergodic base (T, R_alpha), alpha irrational, with its
// continued-fraction machinery.
class RotationSystem {
  public:
    // exact to representation (trusted to q ~ 1e15)
    static RotationSystem from_alpha(Real128 alpha, const std::string& tag = "");
    static RotationSystem golden();
    static RotationSystem inv_pi();
    static RotationSystem sqrt2m1();
    // decimal literal; convergent trust derives from the digit count
    static RotationSystem from_decimal(const std::string& text);
    // CLI-facing: keyword or decimal
    static RotationSystem parse(const std::string& spec);

    Real128 alpha_q() const { return alpha_; }
    double alpha() const { return to_double(alpha_); }
    const std::string& tag() const { return tag_; }

    const CFData& cf() const { return cf_; }
    std::vector<Convergent> convergents() const { return convergent_list(cf_); }

    CirclePoint step(CirclePoint z) const { return rotation_step(z, alpha()); }

    // smallest k with q_{k+1} > min_height, for tower scales; -1 if the
    // expansion cannot reach it (precision), with required written out
    int scale_with_min_height(int64_t min_height, std::string* err) const;

  private:
    Real128 alpha_ = 0;
    std::string tag_;
    CFData cf_;
};

// Long-double orbit accumulator: per-step error ~2^-63, so pairwise orbit
// distances stay coherent to ~1e-15 over 1e6 steps.
class RotationOrbit {
  public:
    RotationOrbit(const RotationSystem& sys, double z0)
        : alpha_(static_cast<long double>(sys.alpha_q())),
          z_(lfrac(static_cast<long double>(z0))) {}

    double value() const { return static_cast<double>(z_); }
    void advance() { z_ = lfrac(z_ + alpha_); }

  private:
    long double alpha_;
    long double z_;
};

}  // namespace ergolab
