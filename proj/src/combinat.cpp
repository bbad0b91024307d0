#include "combinat.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace zl::combinat {

Partition trim(Partition p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

bool is_dominant(const IntVec& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) return false;
    return true;
}

int vec_sum(const IntVec& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
}

Int weyl_dim(const IntVec& lam, int m) {
    if (!is_dominant(lam)) throw std::invalid_argument("weyl_dim: label not dominant");
    IntVec l(lam);
    while ((int)l.size() > m) {
        if (l.back() == 0) l.pop_back();
        else return 0; // more than m nonzero rows
    }
    l.resize(m, 0);
    Int num = 1, den = 1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            num *= l[i] - l[j] + j - i;
            den *= j - i;
        }
    return num / den;
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::pair<std::vector<int>, int>& k) const {
        return hash_ints(k.first.data(), k.first.size()) * 31 + (std::size_t)k.second;
    }
};

using WMKey = std::pair<IntVec, int>;
std::unordered_map<WMKey, WeightMap, KeyHash>& wm_cache() {
    static auto* c = new std::unordered_map<WMKey, WeightMap, KeyHash>();
    return *c;
}
std::mutex wm_mutex;

// Branching GL(m) -> GL(m-1): the weights of lam are, for every mu
// interlacing lam (l[i+1] <= mu[i] <= l[i]), the weights of mu with the
// x_m-exponent |lam| - |mu| appended.
WeightMap weights_by_branching(const IntVec& lamTrimmed, int m) {
    WeightMap out;
    if (m == 1) {
        out[{lamTrimmed.empty() ? 0 : lamTrimmed[0]}] = 1;
        return out;
    }
    IntVec l(lamTrimmed);
    l.resize(m, 0);
    int total = vec_sum(l);
    IntVec mu(m - 1);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == m - 1) {
            const WeightMap& sub = weight_multiset(mu, m - 1);
            int last = total - vec_sum(mu);
            for (const auto& [w, c] : sub) {
                IntVec ww(w);
                ww.push_back(last);
                out[ww] += c;
            }
            return;
        }
        for (int v = l[i + 1]; v <= l[i]; ++v) {
            mu[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace

const WeightMap& weight_multiset(const IntVec& lam_in, int m) {
    IntVec lam(lam_in);
    lam.resize(m, 0);
    if (!is_dominant(lam)) throw std::invalid_argument("weight_multiset: label not dominant");
    WMKey key{trim(lam), m};
    {
        std::lock_guard<std::mutex> lk(wm_mutex);
        auto it = wm_cache().find(key);
        if (it != wm_cache().end()) return it->second;
    }
    WeightMap value;
    int shift = lam[m - 1] < 0 ? -lam[m - 1] : 0;
    if (shift == 0) {
        value = weights_by_branching(key.first, m);
    } else {
        IntVec up(lam);
        for (int& x : up) x += shift;
        const WeightMap& base = weight_multiset(up, m);
        value.reserve(base.size());
        for (const auto& [w, c] : base) {
            IntVec ww(w);
            ww.resize(m, 0);
            for (int& x : ww) x -= shift;
            value.emplace(std::move(ww), c);
        }
    }
    // weights of non-shifted case come out with trailing zeros trimmed by
    // recursion only at the top level; normalize all to length m
    WeightMap norm;
    norm.reserve(value.size());
    for (auto& [w, c] : value) {
        IntVec ww(w);
        ww.resize(m, 0);
        norm[ww] += c;
    }
    std::lock_guard<std::mutex> lk(wm_mutex);
    auto [it, ok] = wm_cache().emplace(std::move(key), std::move(norm));
    (void)ok;
    return it->second;
}

namespace {

// Enumerates Littlewood-Richardson skew tableaux of content mu on top of lam
// by adding one horizontal strip per letter, tracking cumulative per-row
// counts for the lattice condition.
class LREnum {
public:
    LREnum(const Partition& lam, const Partition& mu, std::map<IntVec, long long>& out)
        : mu_(mu), out_(out) {
        rows_ = (int)lam.size() + (int)mu.size() + 1;
        shape_ = lam;
        shape_.resize(rows_, 0);
        prefix_.assign(mu.size() + 1, std::vector<int>(rows_ + 1, 0));
    }

    void run() { letter(0); }

private:
    void letter(int i) {
        if (i == (int)mu_.size()) {
            out_[trim(shape_)] += 1;
            return;
        }
        Partition snap = shape_; // shape before this letter's strip
        row(i, 0, mu_[i], snap);
    }

    // Place `remaining` boxes of letter i into rows >= r.
    void row(int i, int r, int remaining, const Partition& snap) {
        if (remaining == 0) {
            for (int rr = r; rr <= rows_; ++rr) prefix_[i + 1][rr] = prefix_[i + 1][r];
            letter(i + 1);
            return;
        }
        if (r == rows_) return;
        int cap = remaining;
        if (r > 0) cap = std::min(cap, snap[r - 1] - shape_[r]); // horizontal strip
        if (cap < 0) cap = 0;
        for (int k = cap; k >= 0; --k) {
            int newPrefix = prefix_[i + 1][r] + k;
            if (i > 0 && newPrefix > prefix_[i][r]) continue; // lattice word
            prefix_[i + 1][r + 1] = newPrefix;
            shape_[r] += k;
            row(i, r + 1, remaining - k, snap);
            shape_[r] -= k;
        }
    }

    Partition mu_;
    int rows_;
    Partition shape_;
    std::vector<std::vector<int>> prefix_; // prefix_[i+1][r] = # letter-i boxes in rows < r
    std::map<IntVec, long long>& out_;
};

using LRKey = std::pair<IntVec, int>;
std::unordered_map<LRKey, std::map<IntVec, long long>, KeyHash>& lr_cache() {
    static auto* c = new std::unordered_map<LRKey, std::map<IntVec, long long>, KeyHash>();
    return *c;
}
std::mutex lr_mutex;

} // namespace

std::map<IntVec, long long> lr_multiply(const IntVec& lam_in, const IntVec& mu_in) {
    Partition lam = trim(lam_in), mu = trim(mu_in);
    if (!is_dominant(lam) || !is_dominant(mu) || (!lam.empty() && lam.back() < 0) ||
        (!mu.empty() && mu.back() < 0))
        throw std::invalid_argument("lr_multiply: arguments must be partitions");
    if (vec_sum(lam) < vec_sum(mu)) std::swap(lam, mu);

    IntVec flat(lam);
    flat.push_back(-1);
    flat.insert(flat.end(), mu.begin(), mu.end());
    LRKey key{flat, 0};
    {
        std::lock_guard<std::mutex> lk(lr_mutex);
        auto it = lr_cache().find(key);
        if (it != lr_cache().end()) return it->second;
    }
    std::map<IntVec, long long> out;
    LREnum(lam, mu, out).run();
    std::lock_guard<std::mutex> lk(lr_mutex);
    lr_cache().emplace(std::move(key), out);
    return out;
}

std::map<BlockLabel, long long> decompose_character(WeightMap w, const std::vector<int>& block_sizes) {
    std::map<BlockLabel, long long> out;
    int total = 0;
    for (int b : block_sizes) total += b;

    auto sorted_key = [&](const IntVec& v) {
        IntVec k(v);
        int off = 0;
        for (int b : block_sizes) {
            std::sort(k.begin() + off, k.begin() + off + b, std::greater<int>());
            off += b;
        }
        return k;
    };

    while (true) {
        IntVec best;
        bool found = false;
        for (auto it = w.begin(); it != w.end();) {
            if (it->second == 0) { it = w.erase(it); continue; }
            if (it->second < 0) throw std::invalid_argument("decompose_character: not a character");
            IntVec k = sorted_key(it->first);
            if (!found || std::lexicographical_compare(best.begin(), best.end(), k.begin(), k.end())) {
                best = std::move(k);
                found = true;
            }
            ++it;
        }
        if (!found) break;
        long long mult = w.at(best); // the sorted representative is present in a character

        BlockLabel label;
        int off = 0;
        for (int b : block_sizes) {
            label.emplace_back(best.begin() + off, best.begin() + off + b);
            off += b;
        }
        out[label] += mult;

        std::vector<const WeightMap*> blockWeights;
        for (size_t i = 0; i < block_sizes.size(); ++i)
            blockWeights.push_back(&weight_multiset(label[i], block_sizes[i]));
        IntVec cur(total);
        auto rec = [&](auto&& self, size_t bi, int off2, long long m) -> void {
            if (bi == block_sizes.size()) {
                auto it = w.find(cur);
                if (it == w.end() || it->second < m)
                    throw std::invalid_argument("decompose_character: not a character");
                it->second -= m;
                if (it->second == 0) w.erase(it);
                return;
            }
            for (const auto& [bw, bc] : *blockWeights[bi]) {
                for (int j = 0; j < block_sizes[bi]; ++j) cur[off2 + j] = bw[j];
                self(self, bi + 1, off2 + block_sizes[bi], m * bc);
            }
        };
        rec(rec, 0, 0, mult);
    }
    return out;
}

} // namespace zl::combinat
