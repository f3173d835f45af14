#include "ergolab/tower.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergolab/rng.hpp"

namespace ergolab {

TowerStructure::TowerStructure(const RotationSystem& base, int scale_m)
    : alpha_(base.alpha_q()), cf_(base.cf()) {
    if (scale_m < 0 || scale_m + 1 > cf_.max_index())
        throw std::invalid_argument("tower scale beyond continued-fraction expansion");
    sc_.m = scale_m;
    sc_.q[0] = cf_.q[scale_m + 1];
    sc_.q[1] = cf_.q[scale_m] + cf_.q[scale_m + 1];
    sc_.D_m = cf_.D[scale_m];
    sc_.D_m1 = cf_.D[scale_m + 1];
    const Real128 gap = sc_.D_m - sc_.D_m1;  // short piece length
    const bool even = (scale_m % 2 == 0);
    if (even) {
        // long piece sits left: [0, D_{m+1}), short piece [D_{m+1}, D_m)
        sc_.piece_lo[1] = 0;
        sc_.piece_lo[0] = sc_.D_m1;
        sc_.shift[0] = -sc_.D_m1;  // eps_{m+1} < 0
        sc_.shift[1] = gap;        // eps_m + eps_{m+1} > 0
    } else {
        sc_.piece_lo[0] = 0;
        sc_.piece_lo[1] = gap;
        sc_.shift[0] = sc_.D_m1;
        sc_.shift[1] = -gap;
    }
    sc_.piece_len[0] = gap;
    sc_.piece_len[1] = sc_.D_m1;
    verify();
}

int TowerStructure::piece_of(Real128 u) const {
    const bool even = (sc_.m % 2 == 0);
    if (even) return u < sc_.D_m1 ? 1 : 0;
    return u < sc_.D_m - sc_.D_m1 ? 0 : 1;
}

int TowerStructure::image_piece_of(Real128 u) const {
    const bool even = (sc_.m % 2 == 0);
    if (even) return u < sc_.D_m - sc_.D_m1 ? 0 : 1;
    return u < sc_.D_m1 ? 1 : 0;
}

Real128 TowerStructure::position(const TowerPos& p) const {
    return qfrac(sc_.piece_lo[p.tower] + p.offset + Real128(p.level) * alpha_);
}

Real128 TowerStructure::arc_start(const TowerPos& p) const {
    return qfrac(sc_.piece_lo[p.tower] + Real128(p.level) * alpha_);
}

TowerPos TowerStructure::locate(Real128 z) const {
    z = qfrac(z);
    // scale 0: I_0 = [0, alpha); backward-entry count is floor(z/alpha)
    int64_t j = static_cast<int64_t>(to_double(qfloor(z / cf_.D[0])));
    Real128 u = z - Real128(j) * cf_.D[0];
    if (u < Real128(0)) {  // guard quad roundoff at the boundary
        u += cf_.D[0];
        --j;
    }

    for (int k = 0; k < sc_.m; ++k) {
        const Real128 Dk1 = cf_.D[k + 1];
        const Real128 gap = cf_.D[k] - Dk1;
        const bool even = (k % 2 == 0);
        const int64_t r_short = cf_.q[k + 1];
        const int64_t r_long = cf_.q[k] + cf_.q[k + 1];
        int64_t cap = (k + 2 <= cf_.max_index() ? cf_.a[k + 2] : 1) + 4;
        while (u >= Dk1) {
            if (--cap < 0) throw std::logic_error("tower locate: refinement did not converge");
            if (even) {
                if (u < gap) {  // image of the short-return piece is [0, D_k - D_{k+1})
                    u += Dk1;
                    j += r_short;
                } else {
                    u -= gap;
                    j += r_long;
                }
            } else {
                // odd parity: short image is [D_{k+1}, D_k), which contains every
                // u not yet in the target; exiting into the long image [0, D_{k+1})
                // terminates the loop anyway
                u -= Dk1;
                j += r_short;
            }
        }
    }

    TowerPos p;
    p.tower = piece_of(u);
    p.level = j;
    p.offset = u - sc_.piece_lo[p.tower];
    if (p.offset < Real128(0)) p.offset = 0;
    if (p.level < 0 || p.level >= sc_.height(p.tower))
        throw std::logic_error("tower locate: level outside tower height");
    return p;
}

void TowerStructure::step_forward(TowerPos& p) const {
    if (p.level + 1 < sc_.height(p.tower)) {
        ++p.level;
        return;
    }
    Real128 u = sc_.piece_lo[p.tower] + p.offset + sc_.shift[p.tower];
    int t = piece_of(u);
    p.tower = t;
    p.level = 0;
    p.offset = u - sc_.piece_lo[t];
    if (p.offset < Real128(0)) p.offset = 0;
}

void TowerStructure::step_backward(TowerPos& p) const {
    if (p.level > 0) {
        --p.level;
        return;
    }
    Real128 u = sc_.piece_lo[p.tower] + p.offset;
    int src = image_piece_of(u);
    Real128 uprev = u - sc_.shift[src];
    p.tower = src;
    p.level = sc_.height(src) - 1;
    p.offset = uprev - sc_.piece_lo[src];
    if (p.offset < Real128(0)) p.offset = 0;
}

void TowerStructure::verify() const {
    // measure identity q_{m+1} D_m + q_m D_{m+1} = 1
    Real128 one = Real128(cf_.q[sc_.m + 1]) * sc_.D_m + Real128(cf_.q[sc_.m]) * sc_.D_m1;
    if (qabs(one - Real128(1)) > Real128(1e-25))
        throw std::logic_error("tower scale: convergent identity failed");
    // pieces tile I_m
    if (qabs(sc_.piece_len[0] + sc_.piece_len[1] - sc_.D_m) > Real128(1e-30))
        throw std::logic_error("tower scale: pieces do not tile the base");
    // each piece returns into I_m under S^{height}
    for (int t = 0; t < 2; ++t) {
        Real128 lo = sc_.piece_lo[t] + sc_.shift[t];
        Real128 hi = lo + sc_.piece_len[t];
        if (lo < Real128(-1e-30) || hi > sc_.D_m + Real128(1e-30))
            throw std::logic_error("tower scale: return image escapes the base");
    }
}

bool RokhlinTower::covered(const TowerPos& p) const {
    if (trivial) return true;
    int64_t b = p.level / height;
    if (b >= block_count[p.tower]) return false;
    const Real128 len = structure->scale().piece_len[p.tower];
    return p.offset >= margin && p.offset < len - margin;
}

namespace {

// exhaustive pairwise-disjointness of all level arcs of S^i(K), i < N^2
void verify_exhaustive(const RokhlinTower& tw) {
    struct Arc {
        Real128 lo, hi;
    };
    std::vector<Arc> arcs;
    const TowerStructure& st = *tw.structure;
    for (const KArc& ka : tw.karcs) {
        for (int64_t i = 0; i < tw.height; ++i) {
            TowerPos p{ka.tower, ka.block * tw.height + i, 0};
            Real128 lo = qfrac(st.arc_start(p) + tw.margin);
            arcs.push_back({lo, lo + ka.len});
        }
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
    for (size_t i = 0; i + 1 < arcs.size(); ++i) {
        if (arcs[i].hi > arcs[i + 1].lo)
            throw std::logic_error("rokhlin tower: images overlap");
    }
    // wrap-around pair
    if (!arcs.empty() && arcs.back().hi > Real128(1) + arcs.front().lo)
        throw std::logic_error("rokhlin tower: images overlap at wrap");
}

// structural certification plus exact random spot-checks
void verify_sampled(const RokhlinTower& tw, int samples) {
    const TowerStructure& st = *tw.structure;
    st.verify();
    CounterRng rng(0xA5C3uLL, 17);
    int64_t total0 = tw.block_count[0] * tw.height;
    int64_t total1 = tw.block_count[1] * tw.height;
    for (int s = 0; s < samples; ++s) {
        int64_t ia = static_cast<int64_t>(rng.bits(2 * s) % static_cast<uint64_t>(total0 + total1));
        int64_t ib = static_cast<int64_t>(rng.bits(2 * s + 1) % static_cast<uint64_t>(total0 + total1));
        if (ia == ib) continue;
        auto mk = [&](int64_t i) {
            TowerPos p;
            if (i < total0) {
                p.tower = 0;
                p.level = i;
            } else {
                p.tower = 1;
                p.level = i - total0;
            }
            p.offset = 0;
            return p;
        };
        TowerPos pa = mk(ia), pb = mk(ib);
        Real128 la = qfrac(st.arc_start(pa) + tw.margin);
        Real128 lb = qfrac(st.arc_start(pb) + tw.margin);
        Real128 wa = st.scale().piece_len[pa.tower] - 2 * tw.margin;
        Real128 wb = st.scale().piece_len[pb.tower] - 2 * tw.margin;
        // disjoint iff neither start lies inside the other's arc (mod 1)
        Real128 d1 = qfrac(lb - la), d2 = qfrac(la - lb);
        if (d1 < wa || d2 < wb) throw std::logic_error("rokhlin tower: sampled images overlap");
    }
}

}  // namespace

RokhlinTower build_rokhlin_tower(const RotationSystem& rot, int N, double gamma) {
    if (N < 1) throw std::invalid_argument("rokhlin tower: N must be >= 1");
    if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("rokhlin tower: gamma in (0,1)");

    RokhlinTower tw;
    tw.N = N;
    tw.height = static_cast<int64_t>(N) * N;
    tw.gamma = gamma;

    if (N == 1) {
        // single level: an arc of length 1 - gamma/2 suffices
        tw.trivial = true;
        Real128 len = Real128(1) - Real128(gamma) / 2;
        tw.covered_q = len;
        tw.covered_measure = to_double(len);
        tw.base_arcs.push_back({0.0, tw.covered_measure});
        tw.verification = "exhaustive";
        return tw;
    }

    double min_height_d = 2.0 * static_cast<double>(tw.height) / gamma;
    if (min_height_d > 1e15)
        throw std::invalid_argument("rokhlin tower: required height exceeds 1e15");
    int64_t min_height = static_cast<int64_t>(min_height_d) + 1;

    std::string err;
    int m = rot.scale_with_min_height(min_height, &err);
    if (m < 0) throw std::runtime_error("rokhlin tower: " + err);

    auto st = std::make_shared<TowerStructure>(rot, m);
    const TowerScale& sc = st->scale();
    tw.structure = st;
    tw.block_count[0] = sc.height(0) / tw.height;
    tw.block_count[1] = sc.height(1) / tw.height;

    Real128 hsum = Real128(sc.height(0)) + Real128(sc.height(1));
    Real128 margin = Real128(gamma) / (8 * hsum);
    Real128 lmin = sc.piece_len[0] < sc.piece_len[1] ? sc.piece_len[0] : sc.piece_len[1];
    if (margin > lmin / 8) margin = lmin / 8;
    tw.margin = margin;

    for (int t = 0; t < 2; ++t) {
        for (int64_t b = 0; b < tw.block_count[t]; ++b) {
            KArc ka;
            ka.tower = t;
            ka.block = b;
            TowerPos p{t, b * tw.height, 0};
            ka.lo = qfrac(st->arc_start(p) + margin);
            ka.len = sc.piece_len[t] - 2 * margin;
            tw.karcs.push_back(ka);
        }
    }
    std::sort(tw.karcs.begin(), tw.karcs.end(),
              [](const KArc& a, const KArc& b) { return a.lo < b.lo; });
    tw.karc_rank.assign(2, {});
    tw.karc_rank[0].assign(static_cast<size_t>(tw.block_count[0]), -1);
    tw.karc_rank[1].assign(static_cast<size_t>(tw.block_count[1]), -1);
    for (size_t i = 0; i < tw.karcs.size(); ++i)
        tw.karc_rank[tw.karcs[i].tower][static_cast<size_t>(tw.karcs[i].block)] =
            static_cast<int32_t>(i);

    Real128 covered = 0;
    for (const KArc& ka : tw.karcs) covered += ka.len;
    covered *= Real128(tw.height);
    tw.covered_q = covered;
    tw.covered_measure = to_double(covered);
    if (tw.covered_measure < 1.0 - gamma)
        throw std::logic_error("rokhlin tower: covered measure below 1-gamma");

    for (const KArc& ka : tw.karcs)
        tw.base_arcs.push_back({to_double(ka.lo), to_double(ka.len)});

    int64_t total_arcs = static_cast<int64_t>(tw.karcs.size()) * tw.height;
    if (total_arcs <= 200000) {
        verify_exhaustive(tw);
        tw.verification = "exhaustive";
    } else {
        verify_sampled(tw, 20000);
        tw.verification = "structural+sampled";
    }
    return tw;
}

}  // namespace ergolab
