#include "bundle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace zl::bundles {

using combinat::WeightMap;

ExprPtr Expr::zero() { return std::make_shared<Expr>(Expr{.op = Op::Zero}); }
ExprPtr Expr::line(std::vector<int> t) {
    Expr e;
    e.op = Op::Line;
    e.twist = std::move(t);
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::taut(bool isU, int factor, int idx) {
    Expr e;
    e.op = Op::Taut;
    e.tautU = isU;
    e.factor = factor;
    e.tautIdx = idx;
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::dual(ExprPtr k) {
    Expr e;
    e.op = Op::Dual;
    e.kids = {std::move(k)};
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::twisted(ExprPtr k, std::vector<int> t) {
    Expr e;
    e.op = Op::Twist;
    e.twist = std::move(t);
    e.kids = {std::move(k)};
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::tensor(ExprPtr a, ExprPtr b) {
    Expr e;
    e.op = Op::Tensor;
    e.kids = {std::move(a), std::move(b)};
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::sum(ExprPtr a, ExprPtr b) {
    Expr e;
    e.op = Op::Sum;
    e.kids = {std::move(a), std::move(b)};
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::wedge(int k, ExprPtr x) {
    Expr e;
    e.op = Op::Wedge;
    e.power = k;
    e.kids = {std::move(x)};
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::sym(int k, ExprPtr x) {
    Expr e;
    e.op = Op::Sym;
    e.power = k;
    e.kids = {std::move(x)};
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::schur_of(IntVec lam, ExprPtr x) {
    Expr e;
    e.op = Op::Schur;
    e.schur = std::move(lam);
    e.kids = {std::move(x)};
    return std::make_shared<Expr>(std::move(e));
}
ExprPtr Expr::ext(std::vector<ExprPtr> pieces) {
    if (pieces.size() < 2) throw std::invalid_argument("Ext needs >= 2 graded pieces");
    Expr e;
    e.op = Op::Ext;
    e.kids = std::move(pieces);
    return std::make_shared<Expr>(std::move(e));
}

bool Decomposed::zero() const {
    for (const auto& b : blocks)
        if (!b.empty()) return false;
    return true;
}

Ctx::Ctx(Space s) : space_(std::move(s)) {}

std::uint32_t Ctx::intern(const Label& raw) {
    Label l = bwb::canonicalize(space_, raw);
    std::lock_guard<std::mutex> lk(mu_);
    auto it = ids_.find(l);
    if (it != ids_.end()) return it->second;
    std::uint32_t id = (std::uint32_t)labels_.size();
    labels_.push_back(l);
    ids_.emplace(l, id);
    return id;
}

const Label& Ctx::label(std::uint32_t id) const {
    std::lock_guard<std::mutex> lk(mu_);
    return labels_[id];
}

std::uint32_t Ctx::line_id(const std::vector<int>& twist) {
    return intern(bwb::line_label(space_, twist));
}

std::uint32_t Ctx::unit_id() {
    return line_id(std::vector<int>(space_.picard_rank(), 0));
}

namespace {

// Sigma_lam C^m (x) Sigma_mu C^m for a single GL(m) block; inputs dominant of
// length m with possibly negative entries.
std::vector<std::pair<IntVec, long long>> gl_tensor(const IntVec& lam, const IntVec& mu, int m) {
    int s1 = lam.empty() ? 0 : lam[m - 1];
    int s2 = mu.empty() ? 0 : mu[m - 1];
    IntVec a(lam), b(mu);
    for (int& x : a) x -= s1;
    for (int& x : b) x -= s2;
    auto prod = combinat::lr_multiply(a, b);
    std::vector<std::pair<IntVec, long long>> out;
    for (const auto& [nu, c] : prod) {
        if ((int)nu.size() > m) continue; // vanishes in GL(m)
        IntVec v(nu);
        v.resize(m, 0);
        for (int& x : v) x += s1 + s2;
        out.emplace_back(std::move(v), c);
    }
    return out;
}

struct BlockRef {
    int factor;
    int offset;
    int size;
};

std::vector<BlockRef> all_blocks(const Space& s) {
    std::vector<BlockRef> out;
    for (size_t i = 0; i < s.factors.size(); ++i) {
        int off = 0;
        for (int b : s.factors[i].blocks()) {
            out.push_back({(int)i, off, b});
            off += b;
        }
    }
    return out;
}

bool block_constant(const Label& l, const BlockRef& b) {
    for (int j = 1; j < b.size; ++j)
        if (l.v[b.factor][b.offset + j] != l.v[b.factor][b.offset]) return false;
    return true;
}

using Char = WeightMap; // weight (concatenated active blocks) -> multiplicity

Char char_convolve(const Char& a, const Char& b) {
    Char out;
    out.reserve(a.size() * 2);
    for (const auto& [w1, c1] : a)
        for (const auto& [w2, c2] : b) {
            IntVec w(w1);
            for (size_t i = 0; i < w.size(); ++i) w[i] += w2[i];
            out[w] += c1 * c2;
        }
    return out;
}

Char adams(const Char& a, int i) {
    Char out;
    out.reserve(a.size());
    for (const auto& [w, c] : a) {
        IntVec ww(w);
        for (int& x : ww) x *= i;
        out[ww] += c;
    }
    return out;
}

void char_add(Char& a, const Char& b, long long scale) {
    for (const auto& [w, c] : b) {
        auto it = a.find(w);
        if (it == a.end()) {
            if (c * scale != 0) a.emplace(w, c * scale);
        } else {
            it->second += c * scale;
            if (it->second == 0) a.erase(it);
        }
    }
}

// e_0..e_k of a character via Newton's identities.
std::vector<Char> newton_e(const Char& base, int k, int width) {
    std::vector<Char> e(k + 1);
    e[0][IntVec(width, 0)] = 1;
    for (int j = 1; j <= k; ++j) {
        Char acc;
        for (int i = 1; i <= j; ++i) {
            Char t = char_convolve(adams(base, i), e[j - i]);
            char_add(acc, t, (i % 2 == 1) ? 1 : -1);
        }
        Char ej;
        for (auto& [w, c] : acc) {
            if (c % j != 0) throw std::logic_error("newton_e: non-integral coefficient");
            if (c / j != 0) ej[w] = c / j;
        }
        e[j] = std::move(ej);
    }
    return e;
}

std::vector<Char> newton_h(const Char& base, int k, int width) {
    std::vector<Char> h(k + 1);
    h[0][IntVec(width, 0)] = 1;
    for (int j = 1; j <= k; ++j) {
        Char acc;
        for (int i = 1; i <= j; ++i) char_add(acc, char_convolve(adams(base, i), h[j - i]), 1);
        Char hj;
        for (auto& [w, c] : acc) {
            if (c % j != 0) throw std::logic_error("newton_h: non-integral coefficient");
            if (c / j != 0) hj[w] = c / j;
        }
        h[j] = std::move(hj);
    }
    return h;
}

IntVec conjugate(const IntVec& lam) {
    IntVec out;
    for (int col = 1; col <= (lam.empty() ? 0 : lam[0]); ++col) {
        int cnt = 0;
        for (int x : lam)
            if (x >= col) ++cnt;
        out.push_back(cnt);
    }
    return out;
}

// Jacobi-Trudi in the e-basis: s_lam = det(e_{lam'_i - i + j}).
Char schur_char(const Char& base, const IntVec& lam, int width) {
    IntVec lc = conjugate(lam);
    int n = (int)lc.size();
    if (n == 0) {
        Char one;
        one[IntVec(width, 0)] = 1;
        return one;
    }
    int emax = 0;
    for (int i = 0; i < n; ++i) emax = std::max(emax, lc[i] - i + n - 1);
    auto e = newton_e(base, emax, width);
    // permutation expansion of the determinant
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Char acc;
    do {
        int sgn = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sgn = -sgn;
        bool dead = false;
        for (int i = 0; i < n && !dead; ++i) {
            int idx = lc[i] - (i + 1) + (perm[i] + 1);
            if (idx < 0 || (idx <= emax && e[idx].empty())) dead = true;
        }
        if (dead) continue;
        Char term;
        term[IntVec(width, 0)] = 1;
        for (int i = 0; i < n; ++i) {
            int idx = lc[i] - (i + 1) + (perm[i] + 1);
            if (idx == 0) continue;
            term = char_convolve(term, e[idx]);
            if (term.empty()) break;
        }
        char_add(acc, term, sgn);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

} // namespace

std::vector<std::pair<std::uint32_t, long long>> Ctx::mul_labels(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    std::uint64_t key = ((std::uint64_t)a << 32) | b;
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = mulCache_.find(key);
        if (it != mulCache_.end()) return it->second;
    }
    Label la = label(a), lb = label(b);
    auto blocks = all_blocks(space_);
    // per-block expansions
    std::vector<std::vector<std::pair<IntVec, long long>>> parts;
    for (const auto& blk : blocks) {
        IntVec x(la.v[blk.factor].begin() + blk.offset, la.v[blk.factor].begin() + blk.offset + blk.size);
        IntVec y(lb.v[blk.factor].begin() + blk.offset, lb.v[blk.factor].begin() + blk.offset + blk.size);
        bool cx = true, cy = true;
        for (int j = 1; j < blk.size; ++j) {
            cx = cx && x[j] == x[0];
            cy = cy && y[j] == y[0];
        }
        if (cx || cy) {
            IntVec z(x);
            for (int j = 0; j < blk.size; ++j) z[j] += y[j];
            std::sort(z.begin(), z.end(), std::greater<int>()); // one side constant: still dominant
            parts.push_back({{z, 1}});
        } else {
            parts.push_back(gl_tensor(x, y, blk.size));
        }
    }
    std::vector<std::pair<std::uint32_t, long long>> out;
    Label cur(la);
    std::function<void(size_t, long long)> rec = [&](size_t bi, long long m) {
        if (bi == blocks.size()) {
            out.emplace_back(intern(cur), m);
            return;
        }
        const auto& blk = blocks[bi];
        for (const auto& [v, c] : parts[bi]) {
            for (int j = 0; j < blk.size; ++j) cur.v[blk.factor][blk.offset + j] = v[j];
            rec(bi + 1, m * c);
        }
    };
    rec(0, 1);
    // merge duplicates
    std::map<std::uint32_t, long long> merged;
    for (auto& [id, c] : out) merged[id] += c;
    out.assign(merged.begin(), merged.end());
    std::lock_guard<std::mutex> lk(mu_);
    mulCache_.emplace(key, out);
    return out;
}

LabelSet Ctx::mul_sets(const LabelSet& a, const LabelSet& b) {
    LabelSet out;
    for (const auto& [ia, ca] : a)
        for (const auto& [ib, cb] : b)
            for (const auto& [id, c] : mul_labels(ia, ib)) out[id] += ca * cb * c;
    return out;
}

LabelSet Ctx::power_of_label(char which, std::uint32_t id, long long mult, int k, const IntVec& lam) {
    PowKey key{which, id, mult, k, lam};
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = powCache_.find(key);
        if (it != powCache_.end()) return it->second;
    }
    const Label l = label(id);
    auto blocks = all_blocks(space_);
    std::vector<BlockRef> active;
    for (const auto& blk : blocks)
        if (!block_constant(l, blk)) active.push_back(blk);
    int width = 0;
    for (const auto& blk : active) width += blk.size;

    // base character: mult copies of the label restricted to active blocks
    Char base;
    {
        std::vector<const WeightMap*> ws;
        std::vector<int> sizes;
        for (const auto& blk : active) {
            IntVec part(l.v[blk.factor].begin() + blk.offset,
                        l.v[blk.factor].begin() + blk.offset + blk.size);
            ws.push_back(&combinat::weight_multiset(part, blk.size));
            sizes.push_back(blk.size);
        }
        IntVec cur(width);
        std::function<void(size_t, int, long long)> rec = [&](size_t bi, int off, long long m) {
            if (bi == ws.size()) {
                base[cur] += m * mult;
                return;
            }
            for (const auto& [w, c] : *ws[bi]) {
                for (int j = 0; j < sizes[bi]; ++j) cur[off + j] = w[j];
                rec(bi + 1, off + sizes[bi], m * c);
            }
        };
        rec(0, 0, 1);
    }

    Char result;
    int deg = 0;
    if (which == 'e') {
        result = newton_e(base, k, width)[k];
        deg = k;
    } else if (which == 'h') {
        result = newton_h(base, k, width)[k];
        deg = k;
    } else {
        result = schur_char(base, lam, width);
        deg = combinat::vec_sum(lam);
    }

    LabelSet out;
    if (!result.empty()) {
        std::vector<int> sizes;
        for (const auto& blk : active) sizes.push_back(blk.size);
        auto dec = combinat::decompose_character(result, sizes);
        for (const auto& [bl, c] : dec) {
            Label full(l);
            // scale constant blocks by the power's degree
            for (const auto& blk : blocks)
                if (block_constant(l, blk))
                    for (int j = 0; j < blk.size; ++j)
                        full.v[blk.factor][blk.offset + j] = l.v[blk.factor][blk.offset] * deg;
            for (size_t bi = 0; bi < active.size(); ++bi) {
                const auto& blk = active[bi];
                for (int j = 0; j < blk.size; ++j) full.v[blk.factor][blk.offset + j] = bl[bi][j];
            }
            out[intern(full)] += c;
        }
    }
    std::lock_guard<std::mutex> lk(mu_);
    powCache_.emplace(std::move(key), out);
    return out;
}

namespace {

// DP over the distinct pieces of a completely reducible multiset.
LabelSet power_of_set(Ctx& ctx, char which, const LabelSet& s, int k) {
    std::vector<std::pair<std::uint32_t, long long>> pieces(s.begin(), s.end());
    std::sort(pieces.begin(), pieces.end());
    std::map<std::pair<size_t, int>, LabelSet> memo;
    std::function<const LabelSet&(size_t, int)> rec = [&](size_t j, int kk) -> const LabelSet& {
        auto key = std::make_pair(j, kk);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        LabelSet out;
        if (j == pieces.size()) {
            if (kk == 0) out[ctx.unit_id()] = 1;
        } else {
            for (int a = 0; a <= kk; ++a) {
                LabelSet part = ctx.power_of_label(which, pieces[j].first, pieces[j].second, a);
                if (part.empty()) {
                    if (which == 'e') break; // exhausted the rank
                    continue;
                }
                const LabelSet& rest = rec(j + 1, kk - a);
                if (rest.empty()) continue;
                if (a == 0) {
                    for (const auto& [id, c] : rest) out[id] += c;
                } else {
                    LabelSet t = ctx.mul_sets(part, rest);
                    for (const auto& [id, c] : t) out[id] += c;
                }
            }
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    return rec(0, k);
}

} // namespace

LabelSet Ctx::wedge_set(const LabelSet& s, int k) {
    if (k == 0) return {{unit_id(), 1}};
    return power_of_set(*this, 'e', s, k);
}

LabelSet Ctx::sym_set(const LabelSet& s, int k) {
    if (k == 0) return {{unit_id(), 1}};
    return power_of_set(*this, 'h', s, k);
}

LabelSet Ctx::schur_set(const LabelSet& s, const IntVec& lam_in) {
    IntVec lam = combinat::trim(lam_in);
    if (lam.empty()) return {{unit_id(), 1}};
    std::vector<std::pair<std::uint32_t, long long>> pieces(s.begin(), s.end());
    std::sort(pieces.begin(), pieces.end());
    // s_lam(V ⊕ rest) = sum_{a,b} c^lam_{a,b} s_a(V) ⊗ s_b(rest)
    std::function<LabelSet(size_t, const IntVec&)> rec = [&](size_t j, const IntVec& mu) -> LabelSet {
        LabelSet out;
        if (mu.empty()) {
            if (j <= pieces.size()) out[unit_id()] = 1;
            return out;
        }
        if (j == pieces.size()) return out; // s_mu of the zero bundle, mu nonempty
        if (j + 1 == pieces.size()) return power_of_label('s', pieces[j].first, pieces[j].second, 0, mu);
        // enumerate alpha ⊆ mu, beta with c^mu_{alpha beta} != 0 via LR on alpha
        std::vector<IntVec> subs;
        {
            IntVec cur;
            std::function<void(size_t)> gen = [&](size_t r) {
                if (r == mu.size()) {
                    subs.push_back(combinat::trim(cur));
                    return;
                }
                int hi = mu[r];
                int lo = 0;
                for (int v = lo; v <= hi; ++v) {
                    if (!cur.empty() && v > cur.back()) continue;
                    cur.push_back(v);
                    gen(r + 1);
                    cur.pop_back();
                }
            };
            gen(0);
        }
        std::sort(subs.begin(), subs.end());
        subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
        for (const auto& alpha : subs) {
            LabelSet sa = power_of_label('s', pieces[j].first, pieces[j].second, 0, alpha);
            if (sa.empty()) continue;
            // all beta with c^mu_{alpha,beta} > 0
            for (const auto& beta : subs) {
                if (combinat::vec_sum(alpha) + combinat::vec_sum(beta) != combinat::vec_sum(mu)) continue;
                auto pr = combinat::lr_multiply(alpha, beta);
                auto it = pr.find(mu);
                if (it == pr.end()) continue;
                long long coeff = it->second;
                LabelSet sb = rec(j + 1, beta);
                if (sb.empty()) continue;
                LabelSet t = mul_sets(sa, sb);
                for (const auto& [id, c] : t) out[id] += c * coeff;
            }
        }
        return out;
    };
    return rec(0, lam);
}

LabelSet Ctx::dual_set(const LabelSet& s) {
    LabelSet out;
    for (const auto& [id, c] : s) out[intern(bwb::dual_label(space_, label(id)))] += c;
    return out;
}

LabelSet Ctx::twist_set(const LabelSet& s, std::uint32_t lineId) {
    const Label t = label(lineId);
    LabelSet out;
    for (const auto& [id, c] : s) out[intern(bwb::add_labels(label(id), t))] += c;
    return out;
}

Int Ctx::set_rank(const LabelSet& s) const {
    Int r = 0;
    for (const auto& [id, c] : s) r += bwb::label_rank(space_, label(id)) * c;
    return r;
}

Int Ctx::rank(const Decomposed& d) const {
    Int r = 0;
    for (const auto& b : d.blocks) r += set_rank(b);
    return r;
}

std::vector<int> Ctx::first_chern(const Decomposed& d) const {
    std::vector<int> c1(space_.picard_rank(), 0);
    for (const auto& b : d.blocks)
        for (const auto& [id, c] : b) {
            auto cc = bwb::label_first_chern(space_, label(id));
            for (size_t i = 0; i < cc.size(); ++i) c1[i] += cc[i] * (int)c;
        }
    return c1;
}

Decomposed dual(Ctx& ctx, const Decomposed& d) {
    Decomposed out;
    for (auto it = d.blocks.rbegin(); it != d.blocks.rend(); ++it) out.blocks.push_back(ctx.dual_set(*it));
    return out;
}

Decomposed tensor(Ctx& ctx, const Decomposed& a, const Decomposed& b) {
    Decomposed out;
    for (const auto& ba : a.blocks)
        for (const auto& bb : b.blocks) {
            LabelSet s = ctx.mul_sets(ba, bb);
            if (!s.empty()) out.blocks.push_back(std::move(s));
        }
    return out;
}

namespace {

// compositions (a_1..a_s), sum k, in the order a_1 desc, then a_2 desc, ...
template <typename F>
void compositions(int s, int k, F&& emit) {
    std::vector<int> a(s, 0);
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == s - 1) {
            a[i] = rem;
            emit(a);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            a[i] = v;
            rec(i + 1, rem - v);
        }
    };
    if (s == 0) {
        if (k == 0) emit(a);
        return;
    }
    rec(0, k);
}

Decomposed power_decomposed(Ctx& ctx, const Decomposed& d, int k, bool isWedge) {
    Decomposed out;
    if (k == 0) {
        out.blocks.push_back({{ctx.unit_id(), 1}});
        return out;
    }
    int s = (int)d.blocks.size();
    if (s == 0) return out;
    if (s == 1) {
        LabelSet r = isWedge ? ctx.wedge_set(d.blocks[0], k) : ctx.sym_set(d.blocks[0], k);
        if (!r.empty()) out.blocks.push_back(std::move(r));
        return out;
    }
    // cache single-block powers
    std::map<std::pair<int, int>, LabelSet> cache;
    auto blockPow = [&](int i, int a) -> const LabelSet& {
        auto key = std::make_pair(i, a);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        LabelSet r = isWedge ? ctx.wedge_set(d.blocks[i], a) : ctx.sym_set(d.blocks[i], a);
        return cache.emplace(key, std::move(r)).first->second;
    };
    compositions(s, k, [&](const std::vector<int>& a) {
        LabelSet acc{{ctx.unit_id(), 1}};
        bool dead = false;
        for (int i = 0; i < s && !dead; ++i) {
            if (a[i] == 0) continue;
            const LabelSet& p = blockPow(i, a[i]);
            if (p.empty()) {
                dead = true;
                break;
            }
            acc = ctx.mul_sets(acc, p);
        }
        if (!dead && !acc.empty()) out.blocks.push_back(std::move(acc));
    });
    return out;
}

Decomposed schur_decomposed(Ctx& ctx, const Decomposed& d, const IntVec& lam_in) {
    IntVec lam = combinat::trim(lam_in);
    Decomposed out;
    if (lam.empty()) {
        out.blocks.push_back({{ctx.unit_id(), 1}});
        return out;
    }
    int s = (int)d.blocks.size();
    if (s == 0) return out;
    if (s == 1) {
        LabelSet r = ctx.schur_set(d.blocks[0], lam);
        if (!r.empty()) out.blocks.push_back(std::move(r));
        return out;
    }
    // peel one block: s_lam(B_1 ⊕ R) = sum c^lam_{alpha beta} s_alpha(B_1) ⊗ s_beta(R)
    Decomposed rest;
    rest.blocks.assign(d.blocks.begin() + 1, d.blocks.end());
    // enumerate alpha ⊆ lam descending-lex so the sub-most pieces come first
    std::vector<IntVec> subs;
    {
        IntVec cur;
        std::function<void(size_t)> gen = [&](size_t r) {
            if (r == lam.size()) {
                subs.push_back(combinat::trim(cur));
                return;
            }
            for (int v = lam[r]; v >= 0; --v) {
                if (!cur.empty() && v > cur.back()) continue;
                cur.push_back(v);
                gen(r + 1);
                cur.pop_back();
            }
        };
        gen(0);
    }
    std::sort(subs.begin(), subs.end(), std::greater<IntVec>());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    for (const auto& alpha : subs) {
        LabelSet sa = ctx.schur_set(d.blocks[0], alpha);
        if (sa.empty()) continue;
        for (const auto& beta : subs) {
            if (combinat::vec_sum(alpha) + combinat::vec_sum(beta) != combinat::vec_sum(lam)) continue;
            auto pr = combinat::lr_multiply(alpha, beta);
            auto it = pr.find(lam);
            if (it == pr.end()) continue;
            long long coeff = it->second;
            Decomposed sb = schur_decomposed(ctx, rest, beta);
            for (const auto& blk : sb.blocks) {
                LabelSet t = ctx.mul_sets(sa, blk);
                if (coeff != 1)
                    for (auto& [id, c] : t) c *= coeff;
                if (!t.empty()) out.blocks.push_back(std::move(t));
            }
        }
    }
    return out;
}

Decomposed taut_decomposed(Ctx& ctx, bool isU, int fi, int idx) {
    const Space& sp = ctx.space();
    if (fi < 0 || fi >= (int)sp.factors.size()) throw std::invalid_argument("no such factor");
    const auto& f = sp.factors[fi];
    if (f.weighted_factor()) throw std::invalid_argument("tautological bundle on weighted factor");
    int r = (int)f.ks.size();
    if (idx < 1 || idx > r) throw std::invalid_argument("tautological index out of range");
    auto blocks = f.blocks();
    std::vector<int> offs(blocks.size() + 1, 0);
    for (size_t j = 0; j < blocks.size(); ++j) offs[j + 1] = offs[j] + blocks[j];
    auto blockLabel = [&](int b) {
        Label l;
        for (const auto& g : sp.factors) l.v.push_back(IntVec(g.n, 0));
        l.v[fi][offs[b]] = 1; // highest weight of the standard rep of block b
        return l;
    };
    Decomposed out;
    int nb = (int)blocks.size(); // = r + 1; block j is B_j, B_0 = O^n/U_r, B_r = U_1
    if (isU) {
        // U_idx graded [U_1, U_2/U_1, ..., U_idx/U_{idx-1}] = [B_r, ..., B_{r-idx+1}]
        for (int j = r; j >= r - idx + 1; --j) out.blocks.push_back({{ctx.intern(blockLabel(j)), 1}});
    } else {
        // O^n/U_idx graded [U_{idx+1}/U_idx, ..., O^n/U_r] = [B_{r-idx}, ..., B_0]
        for (int j = r - idx; j >= 0; --j) out.blocks.push_back({{ctx.intern(blockLabel(j)), 1}});
    }
    (void)nb;
    return out;
}

} // namespace

Decomposed wedge(Ctx& ctx, const Decomposed& d, int k) { return power_decomposed(ctx, d, k, true); }
Decomposed sym(Ctx& ctx, const Decomposed& d, int k) { return power_decomposed(ctx, d, k, false); }

Decomposed normalize(Ctx& ctx, const ExprPtr& e) {
    switch (e->op) {
        case Expr::Op::Zero: return {};
        case Expr::Op::Line: {
            Decomposed d;
            d.blocks.push_back({{ctx.line_id(e->twist), 1}});
            return d;
        }
        case Expr::Op::Taut: return taut_decomposed(ctx, e->tautU, e->factor, e->tautIdx);
        case Expr::Op::Dual: return dual(ctx, normalize(ctx, e->kids[0]));
        case Expr::Op::Twist: {
            Decomposed d = normalize(ctx, e->kids[0]);
            std::uint32_t lid = ctx.line_id(e->twist);
            for (auto& b : d.blocks) b = ctx.twist_set(b, lid);
            return d;
        }
        case Expr::Op::Tensor: return tensor(ctx, normalize(ctx, e->kids[0]), normalize(ctx, e->kids[1]));
        case Expr::Op::Sum: {
            Decomposed a = normalize(ctx, e->kids[0]);
            Decomposed b = normalize(ctx, e->kids[1]);
            for (auto& blk : b.blocks) a.blocks.push_back(std::move(blk));
            return a;
        }
        case Expr::Op::Wedge: return wedge(ctx, normalize(ctx, e->kids[0]), e->power);
        case Expr::Op::Sym: return sym(ctx, normalize(ctx, e->kids[0]), e->power);
        case Expr::Op::Schur: return schur_decomposed(ctx, normalize(ctx, e->kids[0]), e->schur);
        case Expr::Op::Ext: {
            Decomposed out;
            for (const auto& kid : e->kids) {
                Decomposed part = normalize(ctx, kid);
                for (auto& blk : part.blocks) out.blocks.push_back(std::move(blk));
            }
            return out;
        }
    }
    return {};
}

Decomposed cotangent(Ctx& ctx) {
    const Space& sp = ctx.space();
    if (sp.has_weighted()) throw std::invalid_argument("cotangent: weighted factor");
    Decomposed out;
    for (size_t fi = 0; fi < sp.factors.size(); ++fi) {
        const auto& f = sp.factors[fi];
        auto blocks = f.blocks();
        int nb = (int)blocks.size();
        std::vector<int> offs(nb + 1, 0);
        for (int j = 0; j < nb; ++j) offs[j + 1] = offs[j] + blocks[j];
        // pieces B_a^dual ⊗ B_b for a < b, ordered a asc then b desc
        // (deepest subbundle of Omega first)
        for (int a = 0; a < nb; ++a)
            for (int b = nb - 1; b > a; --b) {
                Label l;
                for (const auto& g : sp.factors) l.v.push_back(IntVec(g.n, 0));
                l.v[fi][offs[a + 1] - 1] = -1; // lowest entry of block a
                l.v[fi][offs[b]] += 1;         // highest entry of block b
                out.blocks.push_back({{ctx.intern(l), 1}});
            }
    }
    return out;
}

Decomposed tangent(Ctx& ctx) { return dual(ctx, cotangent(ctx)); }

Int expr_rank(Ctx& ctx, const ExprPtr& e) {
    switch (e->op) {
        case Expr::Op::Zero: return 0;
        case Expr::Op::Line: return 1;
        case Expr::Op::Taut: {
            const auto& f = ctx.space().factors[e->factor];
            int k = f.ks[e->tautIdx - 1];
            return e->tautU ? k : f.n - k;
        }
        case Expr::Op::Dual:
        case Expr::Op::Twist: return expr_rank(ctx, e->kids[0]);
        case Expr::Op::Tensor: return expr_rank(ctx, e->kids[0]) * expr_rank(ctx, e->kids[1]);
        case Expr::Op::Sum: return expr_rank(ctx, e->kids[0]) + expr_rank(ctx, e->kids[1]);
        case Expr::Op::Wedge: {
            if (e->power < 0) return 0;
            Int r = expr_rank(ctx, e->kids[0]);
            Int num = 1, den = 1;
            for (int i = 0; i < e->power; ++i) {
                num *= r - i;
                den *= i + 1;
            }
            return num / den;
        }
        case Expr::Op::Sym: {
            Int r = expr_rank(ctx, e->kids[0]);
            Int num = 1, den = 1;
            for (int i = 0; i < e->power; ++i) {
                num *= r + i;
                den *= i + 1;
            }
            return num / den;
        }
        case Expr::Op::Schur: {
            Int r = expr_rank(ctx, e->kids[0]);
            long long m = r.convert_to<long long>();
            return combinat::weyl_dim(e->schur, (int)m);
        }
        case Expr::Op::Ext: {
            Int r = 0;
            for (const auto& k : e->kids) r += expr_rank(ctx, k);
            return r;
        }
    }
    return 0;
}

std::vector<int> expr_first_chern(Ctx& ctx, const ExprPtr& e) {
    int pr = ctx.space().picard_rank();
    auto scaled = [&](std::vector<int> v, const Int& s) {
        long long m = s.convert_to<long long>();
        for (int& x : v) x = (int)(x * m);
        return v;
    };
    switch (e->op) {
        case Expr::Op::Zero: return std::vector<int>(pr, 0);
        case Expr::Op::Line: return e->twist;
        case Expr::Op::Taut:
        case Expr::Op::Dual:
        case Expr::Op::Ext:
        case Expr::Op::Schur: {
            // via the normal form; these are the cases without a cheap rule
            Decomposed d = normalize(ctx, e);
            return ctx.first_chern(d);
        }
        case Expr::Op::Twist: {
            auto c = expr_first_chern(ctx, e->kids[0]);
            Int r = expr_rank(ctx, e->kids[0]);
            long long m = r.convert_to<long long>();
            for (int i = 0; i < pr; ++i) c[i] += (int)(e->twist[i] * m);
            return c;
        }
        case Expr::Op::Tensor: {
            auto ca = expr_first_chern(ctx, e->kids[0]);
            auto cb = expr_first_chern(ctx, e->kids[1]);
            Int ra = expr_rank(ctx, e->kids[0]), rb = expr_rank(ctx, e->kids[1]);
            auto a = scaled(ca, rb), b = scaled(cb, ra);
            for (int i = 0; i < pr; ++i) a[i] += b[i];
            return a;
        }
        case Expr::Op::Sum: {
            auto a = expr_first_chern(ctx, e->kids[0]);
            auto b = expr_first_chern(ctx, e->kids[1]);
            for (int i = 0; i < pr; ++i) a[i] += b[i];
            return a;
        }
        case Expr::Op::Wedge: {
            Int r = expr_rank(ctx, e->kids[0]);
            // C(r-1, k-1)
            Int num = 1, den = 1;
            for (int i = 0; i < e->power - 1; ++i) {
                num *= r - 1 - i;
                den *= i + 1;
            }
            return scaled(expr_first_chern(ctx, e->kids[0]), e->power == 0 ? Int(0) : num / den);
        }
        case Expr::Op::Sym: {
            Int r = expr_rank(ctx, e->kids[0]);
            Int num = 1, den = 1;
            for (int i = 0; i < e->power - 1; ++i) {
                num *= r + 1 + i;
                den *= i + 1;
            }
            return scaled(expr_first_chern(ctx, e->kids[0]), e->power == 0 ? Int(0) : num / den);
        }
    }
    return std::vector<int>(pr, 0);
}

} // namespace zl::bundles
