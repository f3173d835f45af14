#include "ergolab/rotation.hpp"

#include <cctype>
#include <stdexcept>

namespace ergolab {

namespace {
constexpr int kDefaultDepth = 120;
const Real128 kExactTrust = Real128(1e33);  // quad alpha: q_k*q_{k+1} cap
}  // namespace

RotationSystem RotationSystem::from_alpha(Real128 alpha, const std::string& tag) {
    if (!(alpha > Real128(0) && alpha < Real128(1)))
        throw std::invalid_argument("alpha must lie in (0,1)");
    RotationSystem sys;
    sys.alpha_ = alpha;
    sys.tag_ = tag;
    sys.cf_ = continued_fraction_expand(alpha, kDefaultDepth, kExactTrust);
    return sys;
}

RotationSystem RotationSystem::golden() { return from_alpha(golden_alpha(), "golden"); }

RotationSystem RotationSystem::inv_pi() { return from_alpha(Real128(1) / M_PIq, "1/pi"); }

RotationSystem RotationSystem::sqrt2m1() {
    return from_alpha(qsqrt(Real128(2)) - Real128(1), "sqrt2-1");
}

RotationSystem RotationSystem::from_decimal(const std::string& text) {
    Real128 alpha = qparse(text);
    if (!(alpha > Real128(0) && alpha < Real128(1)))
        throw std::invalid_argument("alpha must lie in (0,1): " + text);
    int digits = 0;
    bool seen_dot = false;
    for (char c : text) {
        if (c == '.') seen_dot = true;
        else if (seen_dot && std::isdigit(static_cast<unsigned char>(c))) ++digits;
    }
    if (digits == 0) digits = 1;
    // convergents of the stored value are convergents of the intended number
    // only while q_k*q_{k+1} stays well under the decimal resolution
    Real128 trust = Real128(0.1);
    for (int i = 0; i < digits; ++i) trust *= Real128(10);
    RotationSystem sys;
    sys.alpha_ = alpha;
    sys.tag_ = text;
    sys.cf_ = continued_fraction_expand(alpha, kDefaultDepth, trust);
    return sys;
}

RotationSystem RotationSystem::parse(const std::string& spec) {
    if (spec == "golden") return golden();
    if (spec == "1/pi" || spec == "invpi") return inv_pi();
    if (spec == "sqrt2-1") return sqrt2m1();
    return from_decimal(spec);
}

int RotationSystem::scale_with_min_height(int64_t min_height, std::string* err) const {
    for (int k = 0; k + 1 <= cf_.max_index(); ++k) {
        if (cf_.q[k + 1] > min_height) return k;
    }
    if (err) {
        *err = "tower scale needs a convergent with q_{k+1} > " + std::to_string(min_height) +
               " but the expansion of alpha=" + (tag_.empty() ? qformat(alpha_, 20) : tag_) +
               " stops at q=" + std::to_string(cf_.q.back()) +
               (cf_.truncated ? " (" + cf_.stop_reason + ")" : " (depth)");
    }
    return -1;
}

}  // namespace ergolab
