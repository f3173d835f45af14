#include "ergolab/continued_fraction.hpp"

#include <limits>

namespace ergolab {

CFData continued_fraction_expand(Real128 alpha, int depth, Real128 trust_product) {
    CFData cf;
    cf.a.push_back(0);
    cf.p.push_back(0);
    cf.q.push_back(1);
    cf.D.push_back(alpha);

    int64_t pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
    Real128 Dm1 = 1;           // D_{-1}
    Real128 x = alpha;         // x_k, Gauss-map iterate
    const Real128 rational_floor = Real128(1e-30);

    for (int k = 0; k < depth; ++k) {
        if (x < rational_floor) {
            cf.truncated = true;
            cf.stop_reason = "rational";
            break;
        }
        Real128 inv = Real128(1) / x;
        Real128 af = qfloor(inv);
        if (af > Real128(std::numeric_limits<int64_t>::max() / 4)) {
            cf.truncated = true;
            cf.stop_reason = "rational";
            break;
        }
        int64_t ak = static_cast<int64_t>(to_double(af));
        Real128 xn = inv - af;

        int64_t pk = cf.p.back(), qk = cf.q.back();
        // overflow / precision guard before committing q_{k+1}
        Real128 qn_est = Real128(ak) * Real128(qk) + Real128(qm1);
        if (qn_est * Real128(qk) > trust_product ||
            qn_est > Real128(std::numeric_limits<int64_t>::max() / 4)) {
            cf.truncated = true;
            cf.stop_reason = "precision";
            break;
        }
        int64_t pn = ak * pk + pm1;
        int64_t qn = ak * qk + qm1;
        Real128 Dn = Dm1 - Real128(ak) * cf.D.back();
        if (Dn < Real128(0)) Dn = -Dn;  // roundoff at rational tails

        cf.a.push_back(ak);
        cf.p.push_back(pn);
        cf.q.push_back(qn);
        pm1 = pk;
        qm1 = qk;
        Dm1 = cf.D.back();
        cf.D.push_back(Dn);
        x = xn;
    }
    return cf;
}

std::vector<Convergent> convergent_list(const CFData& cf) {
    std::vector<Convergent> out;
    for (size_t k = 1; k < cf.q.size(); ++k) out.push_back({cf.p[k], cf.q[k]});
    return out;
}

}  // namespace ergolab
