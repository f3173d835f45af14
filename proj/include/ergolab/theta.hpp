#pragma once

#include <memory>
#include <vector>

#include "ergolab/tower.hpp"

namespace ergolab {

// theta_tilde: the normalized CDF of the K arcs, copied up tower columns and
// interpolated linearly (in the circle coordinate) across the uncovered gaps;
// continuous, piecewise linear, pushes nu|K to Lebesgue exactly.
// theta: its N-step backward average, so |theta(Sz) - theta(z)| <= 2/N.
class ThetaMap {
  public:
    ThetaMap(std::shared_ptr<const RokhlinTower> tower, int N);

    int N() const { return N_; }
    const RokhlinTower& tower() const { return *tw_; }
    const TowerStructure& structure() const { return *tw_->structure; }

    double theta_tilde(Real128 z) const;
    double theta(Real128 z) const;

    double theta_tilde_at(const TowerPos& p) const;
    double theta_at(TowerPos p) const;

    // max |theta_tilde - Lebesgue CDF| over the K-arc endpoints (exact arithmetic)
    double pushforward_kolmogorov() const;

    double covered_value(const TowerPos& p) const;

  private:
    friend class ThetaOrbit;
    double interpolated_value(const TowerPos& p) const;
    long double window_sum(TowerPos p) const;  // sum of theta_tilde over N backward steps

    std::shared_ptr<const RokhlinTower> tw_;
    int N_;
    std::vector<Real128> cdf_start_;  // cumulative shrunk length before each sorted arc
    Real128 total_len_ = 0;
};

ThetaMap build_theta(std::shared_ptr<const RokhlinTower> tower, int N);

// Forward orbit with a sliding theta window: O(1) amortized per step.
class ThetaOrbit {
  public:
    ThetaOrbit(const ThetaMap& map, Real128 z0);

    double theta() const { return static_cast<double>(sum_ / N_); }
    const TowerPos& pos() const { return front_; }
    Real128 z() const { return map_->structure().position(front_); }
    void advance();

  private:
    const ThetaMap* map_;
    int64_t N_;
    TowerPos front_;
    TowerPos tail_;  // S^{-(N-1)} of front
    long double sum_;
};

}  // namespace ergolab
