#include "ergolab/symbolic.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace ergolab {

namespace {

inline int tm_onesided(int64_t k) {
    return std::popcount(static_cast<uint64_t>(k)) & 1;
}

inline int tm_twosided(int64_t n) {
    if (n >= 0) return tm_onesided(n);
    return 1 - tm_onesided(-1 - n);
}

inline Real128 qceil(Real128 x) { return -qfloor(-x); }

const double kMetricNorm = 3.0 - 0x1.0p-63;

}  // namespace

SymbolicSystem SymbolicSystem::sturmian(Real128 alpha, bool upper_default) {
    SymbolicSystem s;
    s.kind_ = Kind::Sturmian;
    s.alpha_ = alpha;
    s.upper_default_ = upper_default;
    return s;
}

SymbolicSystem SymbolicSystem::thue_morse() {
    SymbolicSystem s;
    s.kind_ = Kind::ThueMorse;
    return s;
}

int SymbolicSystem::coord(const SymbolicPoint& x, int64_t n) const {
    if (kind_ == Kind::ThueMorse) {
        int b = tm_twosided(n + x.shift);
        return x.complement ? 1 - b : b;
    }
    Real128 lo = Real128(n) * alpha_ + x.rho;
    Real128 hi = lo + alpha_;
    if (x.upper) return static_cast<int>(to_double(qceil(hi) - qceil(lo)));
    return static_cast<int>(to_double(qfloor(hi) - qfloor(lo)));
}

std::string SymbolicSystem::word(const SymbolicPoint& x, int64_t m, int64_t n) const {
    if (m >= n) return "";
    std::string out;
    out.reserve(static_cast<size_t>(n - m));
    for (int64_t i = m; i < n; ++i) out.push_back(coord(x, i) ? '1' : '0');
    return out;
}

SymbolicPoint SymbolicSystem::point_sturmian(Real128 rho, bool upper) const {
    SymbolicPoint p;
    p.rho = qfrac(rho);
    p.upper = upper;
    return p;
}

SymbolicPoint SymbolicSystem::point_tm(int64_t shift, bool complement) const {
    SymbolicPoint p;
    p.shift = shift;
    p.complement = complement;
    return p;
}

SymbolicPoint SymbolicSystem::advance(const SymbolicPoint& x) const {
    SymbolicPoint y = x;
    if (kind_ == Kind::ThueMorse) {
        y.shift = x.shift + 1;
    } else {
        y.rho = qfrac(x.rho + alpha_);
    }
    return y;
}

double symbolic_dist(const SymbolicSystem& sys, const SymbolicPoint& x, const SymbolicPoint& y) {
    double acc = 0.0;
    for (int k = -kSymbolicMetricRadius; k <= kSymbolicMetricRadius; ++k) {
        if (sys.coord(x, k) != sys.coord(y, k))
            acc += std::pow(2.0, -std::abs(k));
    }
    return acc / kMetricNorm;
}

std::vector<double> symbolic_distance_sequence(const SymbolicSystem& sys, const SymbolicPoint& x,
                                               const SymbolicPoint& y, int64_t n) {
    const int K = kSymbolicMetricRadius;
    const int64_t lo = -K, hi = n + K;  // coordinates needed: [lo, hi]
    std::vector<char> diff(static_cast<size_t>(hi - lo + 1));
    for (int64_t j = lo; j <= hi; ++j)
        diff[static_cast<size_t>(j - lo)] = static_cast<char>(sys.coord(x, j) != sys.coord(y, j));
    auto D = [&](int64_t j) -> double { return diff[static_cast<size_t>(j - lo)]; };

    std::vector<double> out(static_cast<size_t>(n));
    // left_i = sum_{k=1..K} 2^{-k} D(i-k), right_i = sum_{k=1..K} 2^{-k} D(i+k)
    double left = 0.0, right = 0.0;
    for (int k = 1; k <= K; ++k) {
        left += std::pow(2.0, -k) * D(0 - k);
        right += std::pow(2.0, -k) * D(0 + k);
    }
    const double wK = std::pow(2.0, -K);
    for (int64_t i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = (D(i) + left + right) / kMetricNorm;
        // slide to i+1
        left = 0.5 * (left + D(i)) - 0.5 * wK * D(i - K);
        right = 2.0 * (right - 0.5 * D(i + 1)) + wK * D(i + 1 + K);
    }
    return out;
}

SturmianFiber sturmian_fiber(const RotationSystem& rot, Real128 z, int64_t window) {
    const Real128 tol = Real128(0x1.0p-90);
    Real128 alpha = rot.alpha_q();
    z = qfrac(z);
    SymbolicSystem sys = SymbolicSystem::sturmian(alpha);

    SturmianFiber fib;
    for (int64_t m = -window; m <= window; ++m) {
        Real128 crit = qfrac(Real128(-m) * alpha);
        Real128 d = qabs(z - crit);
        if (d > Real128(0.5)) d = Real128(1) - d;
        if (d < tol) {
            fib.cardinality = 2;
            fib.critical_index = m;
            fib.points.push_back(sys.point_sturmian(z, false));
            fib.points.push_back(sys.point_sturmian(z, true));
            return fib;
        }
    }
    fib.cardinality = 1;
    fib.points.push_back(sys.point_sturmian(z, false));
    return fib;
}

int64_t factor_count(const SymbolicSystem& sys, const SymbolicPoint& x, int L, int64_t from,
                     int64_t span) {
    std::unordered_set<std::string> seen;
    std::string w = sys.word(x, from, from + span);
    for (int64_t i = 0; i + L <= static_cast<int64_t>(w.size()); ++i)
        seen.insert(w.substr(static_cast<size_t>(i), static_cast<size_t>(L)));
    return static_cast<int64_t>(seen.size());
}

TmAdversary tm_best_complement_agreement(const SymbolicSystem& sys, int64_t max_shift) {
    TmAdversary best;
    SymbolicPoint wbar = sys.point_tm(0, true);
    for (int64_t k = 1; k <= max_shift; ++k) {
        SymbolicPoint shifted = sys.point_tm(k, false);
        int L = 0;
        while (L <= kSymbolicMetricRadius) {
            if (sys.coord(shifted, L) != sys.coord(wbar, L)) break;
            if (sys.coord(shifted, -L) != sys.coord(wbar, -L)) break;
            ++L;
        }
        if (L > best.agreement_radius) {
            best.agreement_radius = L;
            best.shift = k;
        }
    }
    return best;
}

}  // namespace ergolab
