#pragma once

// Independent test oracles: Gelfand-Tsetlin pattern enumeration for weight
// multisets, and Pieri-rule expansion for Grassmannian intersection numbers.
// These deliberately avoid the library's own computation paths.

#include "combinat.hpp"

#include <map>
#include <vector>

namespace oracles {

using zl::combinat::IntVec;

// All weights of the GL(m) irreducible with highest weight lam (non-negative
// entries), by explicit enumeration of Gelfand-Tsetlin patterns.
inline std::map<IntVec, long long> gt_weights(IntVec lam, int m) {
    lam.resize(m, 0);
    std::map<IntVec, long long> out;
    // rows[m-1] = lam; rows[i] has i+1 entries and interlaces rows[i+1]
    std::vector<IntVec> rows(m);
    rows[m - 1] = lam;
    std::function<void(int)> rec = [&](int level) {
        if (level < 0) {
            IntVec w(m);
            long long prev = 0;
            for (int i = 0; i < m; ++i) {
                long long s = 0;
                for (int x : rows[i]) s += x;
                w[i] = (int)(s - prev);
                prev = s;
            }
            out[w] += 1;
            return;
        }
        const IntVec& above = rows[level + 1];
        IntVec cur(level + 1);
        std::function<void(int)> fill = [&](int j) {
            if (j == level + 1) {
                rows[level] = cur;
                rec(level - 1);
                return;
            }
            for (int v = above[j + 1]; v <= above[j]; ++v) {
                cur[j] = v;
                fill(j + 1);
            }
        };
        fill(0);
    };
    rec(m - 2);
    if (m == 1) out[{lam[0]}] = 1;
    return out;
}

// sigma_1 * sigma_lam on Gr(k,n) by the Pieri rule (partitions in the k x
// (n-k) box).
inline std::map<IntVec, long long> pieri_sigma1(const std::map<IntVec, long long>& classes, int k,
                                                int nk) {
    std::map<IntVec, long long> out;
    for (const auto& [lam, c] : classes) {
        IntVec l(lam);
        l.resize(k, 0);
        for (int i = 0; i < k; ++i) {
            if (l[i] + 1 > nk) continue;
            if (i > 0 && l[i] + 1 > l[i - 1]) continue;
            IntVec nu(l);
            nu[i] += 1;
            out[nu] += c;
        }
    }
    return out;
}

// integral over Gr(k,n) of sigma_1^{k(n-k)}: iterate Pieri from the empty
// partition and read off the coefficient of the full box.
inline long long degree_sigma1(int k, int n) {
    std::map<IntVec, long long> cur{{IntVec(k, 0), 1}};
    int nk = n - k;
    for (int step = 0; step < k * nk; ++step) cur = pieri_sigma1(cur, k, nk);
    IntVec full(k, nk);
    auto it = cur.find(full);
    return it == cur.end() ? 0 : it->second;
}

} // namespace oracles
