#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/real128.hpp"

namespace ergolab {

struct Convergent {
    int64_t p = 0;
    int64_t q = 1;
};

// Regular continued-fraction data for alpha in (0,1).
// Index k runs over 0,1,2,... with p0/q0 = 0/1 and the implicit
// p_{-1}/q_{-1} = 1/0. D[k] = |q_k*alpha - p_k| (D_{-1} = 1).
struct CFData {
    std::vector<int64_t> a;    // a[0] = 0, then partial quotients a1, a2, ...
    std::vector<int64_t> p;
    std::vector<int64_t> q;
    std::vector<Real128> D;
    bool truncated = false;          // stopped before requested depth
    std::string stop_reason;         // "rational" | "precision" | ""

    int max_index() const { return static_cast<int>(q.size()) - 1; }
};

// Expands alpha to at most `depth` partial quotients past a0. trust_product
// caps q_k*q_{k+1}; beyond it the convergents of the stored value stop being
// reliable convergents of the intended number.
CFData continued_fraction_expand(Real128 alpha, int depth, Real128 trust_product);

// Spec-facing view: nontrivial convergents p_k/q_k, k >= 1 (q strictly increasing).
std::vector<Convergent> convergent_list(const CFData& cf);

}  // namespace ergolab
