#include "ergolab/theta.hpp"

#include <algorithm>
#include <stdexcept>

namespace ergolab {

ThetaMap::ThetaMap(std::shared_ptr<const RokhlinTower> tower, int N) : tw_(std::move(tower)), N_(N) {
    if (N < 2) throw std::invalid_argument("theta: N must be >= 2");
    if (tw_->height != static_cast<int64_t>(N) * N)
        throw std::invalid_argument("theta: tower height does not equal N^2");
    if (tw_->trivial || !tw_->structure)
        throw std::invalid_argument("theta: tower lacks two-tower structure");
    cdf_start_.reserve(tw_->karcs.size());
    Real128 acc = 0;
    for (const KArc& ka : tw_->karcs) {
        cdf_start_.push_back(acc);
        acc += ka.len;
    }
    total_len_ = acc;
}

ThetaMap build_theta(std::shared_ptr<const RokhlinTower> tower, int N) {
    return ThetaMap(std::move(tower), N);
}

double ThetaMap::covered_value(const TowerPos& p) const {
    int64_t b = p.level / tw_->height;
    int32_t rank = tw_->karc_rank[p.tower][static_cast<size_t>(b)];
    Real128 v = (cdf_start_[static_cast<size_t>(rank)] + (p.offset - tw_->margin)) / total_len_;
    return to_double(v);
}

double ThetaMap::interpolated_value(const TowerPos& p) const {
    const TowerStructure& st = *tw_->structure;
    const TowerScale& sc = st.scale();
    const Real128 lmin = sc.piece_len[0] < sc.piece_len[1] ? sc.piece_len[0] : sc.piece_len[1];
    const Real128 delta = lmin / 2;
    const int kWalkCap = 100000;

    // left covered endpoint: either inside this arc or by walking left
    Real128 left_end, vL;
    Real128 arc_lo = st.arc_start(p);
    Real128 len = sc.piece_len[p.tower];
    bool block_cov = !tw_->trivial && (p.level / tw_->height) < tw_->block_count[p.tower];
    if (block_cov && p.offset >= len - tw_->margin) {
        left_end = qfrac(arc_lo + (len - tw_->margin));
        int64_t b = p.level / tw_->height;
        int32_t rank = tw_->karc_rank[p.tower][static_cast<size_t>(b)];
        vL = (cdf_start_[static_cast<size_t>(rank)] + tw_->karcs[static_cast<size_t>(rank)].len) /
             total_len_;
    } else {
        Real128 probe_lo = arc_lo;
        int guard = kWalkCap;
        while (true) {
            if (--guard < 0) throw std::runtime_error("theta: interpolation walk exceeded bound");
            TowerPos q = st.locate(qfrac(probe_lo - delta));
            Real128 qlen = sc.piece_len[q.tower];
            bool qcov = (q.level / tw_->height) < tw_->block_count[q.tower];
            Real128 qlo = st.arc_start(q);
            if (qcov) {
                left_end = qfrac(qlo + (qlen - tw_->margin));
                int64_t b = q.level / tw_->height;
                int32_t rank = tw_->karc_rank[q.tower][static_cast<size_t>(b)];
                vL = (cdf_start_[static_cast<size_t>(rank)] +
                      tw_->karcs[static_cast<size_t>(rank)].len) /
                     total_len_;
                break;
            }
            probe_lo = qlo;
        }
    }

    // right covered endpoint
    Real128 right_start, vR;
    if (block_cov && p.offset < tw_->margin) {
        right_start = qfrac(arc_lo + tw_->margin);
        int64_t b = p.level / tw_->height;
        int32_t rank = tw_->karc_rank[p.tower][static_cast<size_t>(b)];
        vR = cdf_start_[static_cast<size_t>(rank)] / total_len_;
    } else {
        Real128 probe_end = qfrac(arc_lo + len);
        int guard = kWalkCap;
        while (true) {
            if (--guard < 0) throw std::runtime_error("theta: interpolation walk exceeded bound");
            TowerPos q = st.locate(qfrac(probe_end + delta));
            Real128 qlen = sc.piece_len[q.tower];
            bool qcov = (q.level / tw_->height) < tw_->block_count[q.tower];
            Real128 qlo = st.arc_start(q);
            if (qcov) {
                right_start = qfrac(qlo + tw_->margin);
                int64_t b = q.level / tw_->height;
                int32_t rank = tw_->karc_rank[q.tower][static_cast<size_t>(b)];
                vR = cdf_start_[static_cast<size_t>(rank)] / total_len_;
                break;
            }
            probe_end = qfrac(qlo + qlen);
        }
    }

    Real128 x = st.position(p);
    Real128 gap = qfrac(right_start - left_end);
    if (gap <= Real128(0)) return to_double(vL);
    Real128 s = qfrac(x - left_end) / gap;
    if (s > Real128(1)) s = 1;
    return to_double(vL + (vR - vL) * s);
}

double ThetaMap::theta_tilde_at(const TowerPos& p) const {
    if (tw_->covered(p)) return covered_value(p);
    return interpolated_value(p);
}

double ThetaMap::theta_tilde(Real128 z) const {
    return theta_tilde_at(tw_->structure->locate(z));
}

long double ThetaMap::window_sum(TowerPos pos) const {
    const TowerStructure& st = *tw_->structure;
    int64_t remaining = N_;
    long double acc = 0;
    while (true) {
        if (tw_->covered(pos)) {
            int64_t bstart = (pos.level / tw_->height) * tw_->height;
            int64_t c = std::min<int64_t>(remaining, pos.level - bstart + 1);
            acc += static_cast<long double>(c) * covered_value(pos);
            remaining -= c;
            if (remaining == 0) break;
            if (pos.level >= c) {
                pos.level -= c;
            } else {
                pos.level = 0;
                st.step_backward(pos);
            }
        } else {
            acc += interpolated_value(pos);
            if (--remaining == 0) break;
            if (pos.level > 0)
                --pos.level;
            else
                st.step_backward(pos);
        }
    }
    return acc;
}

double ThetaMap::theta_at(TowerPos p) const {
    return static_cast<double>(window_sum(p) / N_);
}

double ThetaMap::theta(Real128 z) const { return theta_at(tw_->structure->locate(z)); }

double ThetaMap::pushforward_kolmogorov() const {
    Real128 worst = 0;
    Real128 acc = 0;
    for (size_t i = 0; i < tw_->karcs.size(); ++i) {
        Real128 lo_val = cdf_start_[i] / total_len_;
        Real128 lo_mass = acc / total_len_;
        Real128 d = qabs(lo_val - lo_mass);
        if (d > worst) worst = d;
        acc += tw_->karcs[i].len;
        Real128 hi_val = (cdf_start_[i] + tw_->karcs[i].len) / total_len_;
        Real128 hi_mass = acc / total_len_;
        d = qabs(hi_val - hi_mass);
        if (d > worst) worst = d;
    }
    return to_double(worst);
}

ThetaOrbit::ThetaOrbit(const ThetaMap& map, Real128 z0)
    : map_(&map), N_(map.N()), front_(map.structure().locate(z0)) {
    sum_ = map_->window_sum(front_);
    // tail = S^{-(N-1)} front
    tail_ = front_;
    const TowerStructure& st = map_->structure();
    int64_t r = N_ - 1;
    while (r > 0) {
        if (tail_.level >= r) {
            tail_.level -= r;
            r = 0;
        } else {
            r -= tail_.level + 1;
            tail_.level = 0;
            st.step_backward(tail_);
        }
    }
}

void ThetaOrbit::advance() {
    const TowerStructure& st = map_->structure();
    st.step_forward(front_);
    sum_ += map_->theta_tilde_at(front_);
    sum_ -= map_->theta_tilde_at(tail_);
    st.step_forward(tail_);
}

}  // namespace ergolab
