#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ergolab/circle.hpp"
#include "ergolab/rotation.hpp"

namespace ergolab {

// Two-tower decomposition of the circle at continued-fraction scale m:
// I_m = [0, D_m) splits into a piece with first-return time q_{m+1} (tower 0,
// "short") and one with return time q_m + q_{m+1} (tower 1, "long"); the
// returns' levels S^j(piece) tile the circle. Which piece sits left of the
// other depends on the parity of m.
struct TowerScale {
    int m = 0;
    int64_t q[2] = {0, 0};        // heights: q_{m+1}, q_m + q_{m+1}
    Real128 D_m = 0, D_m1 = 0;    // D_m, D_{m+1}
    Real128 piece_lo[2] = {0, 0};
    Real128 piece_len[2] = {0, 0};  // short: D_m - D_{m+1}, long: D_{m+1}
    Real128 shift[2] = {0, 0};      // displacement of S^{height} on each piece

    int64_t height(int t) const { return q[t]; }
};

// z = S^level(piece_lo[tower] + offset), offset in [0, piece_len[tower])
struct TowerPos {
    int tower = 0;
    int64_t level = 0;
    Real128 offset = 0;
};

class TowerStructure {
  public:
    TowerStructure(const RotationSystem& base, int scale_m);

    const TowerScale& scale() const { return sc_; }
    Real128 alpha() const { return alpha_; }

    TowerPos locate(Real128 z) const;
    Real128 position(const TowerPos& p) const;  // circle coordinate of the point
    Real128 arc_start(const TowerPos& p) const;  // left endpoint of the level arc

    void step_forward(TowerPos& p) const;
    void step_backward(TowerPos& p) const;

    // exact identities of the scale; throws on failure
    void verify() const;

  private:
    int piece_of(Real128 u) const;          // which tower's base piece holds u
    int image_piece_of(Real128 u) const;    // which piece's return-image holds u

    Real128 alpha_;
    CFData cf_;
    TowerScale sc_;
};

struct KArc {
    int tower = 0;
    int64_t block = 0;
    Real128 lo = 0;   // shrunk left endpoint (circle position)
    Real128 len = 0;  // shrunk length
};

// K = union of block-start levels of both towers, each arc shrunk by an exact
// margin so the N^2 images are separated, not merely half-open-disjoint.
struct RokhlinTower {
    // spec-facing fields
    std::vector<CircleArc> base_arcs;
    int64_t height = 1;  // N^2
    double covered_measure = 0;
    double gamma = 0;

    // construction data
    int N = 1;
    bool trivial = false;  // N == 1 single-arc case
    std::shared_ptr<const TowerStructure> structure;
    int64_t block_count[2] = {0, 0};  // complete blocks per tower
    Real128 margin = 0;
    Real128 covered_q = 0;
    std::string verification;  // "exhaustive" | "structural+sampled"

    std::vector<KArc> karcs;                    // sorted by circle position
    std::vector<std::vector<int32_t>> karc_rank;  // [tower][block] -> index into karcs

    bool covered(const TowerPos& p) const;
    int64_t block_of(const TowerPos& p) const { return p.level / height; }
};

RokhlinTower build_rokhlin_tower(const RotationSystem& rot, int N, double gamma);

}  // namespace ergolab
