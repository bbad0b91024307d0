#include "chow.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zl::chow {

namespace {

void subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if ((int)cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - (int)cur.size()); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// all chains S_1 c S_2 c ... c S_r of the given sizes inside {0..n-1}
void chains(const std::vector<int>& ks, int n, std::vector<std::vector<std::vector<int>>>& out) {
    std::vector<std::vector<int>> cur;
    std::function<void(size_t, const std::vector<int>&)> rec = [&](size_t step, const std::vector<int>& prev) {
        if (step == ks.size()) {
            out.push_back(cur);
            return;
        }
        int need = ks[step] - (int)prev.size();
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (!std::binary_search(prev.begin(), prev.end(), i)) rest.push_back(i);
        std::vector<std::vector<int>> adds;
        subsets((int)rest.size(), need, adds);
        for (auto& a : adds) {
            std::vector<int> next(prev);
            for (int idx : a) next.push_back(rest[idx]);
            std::sort(next.begin(), next.end());
            cur.push_back(next);
            rec(step + 1, next);
            cur.pop_back();
        }
    };
    rec(0, {});
}

bool is_prime(int x) {
    if (x < 2) return false;
    for (int d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

} // namespace

std::vector<FixedPoint> fixed_points(const Space& s) {
    std::vector<std::vector<std::vector<std::vector<int>>>> perFactor;
    for (const auto& f : s.factors) {
        if (f.weighted_factor()) throw std::invalid_argument("fixed_points: weighted factor");
        std::vector<std::vector<std::vector<int>>> fc;
        chains(f.ks, f.n, fc);
        perFactor.push_back(std::move(fc));
    }
    std::vector<FixedPoint> out;
    FixedPoint cur;
    cur.chains.resize(s.factors.size());
    std::function<void(size_t)> rec = [&](size_t fi) {
        if (fi == s.factors.size()) {
            out.push_back(cur);
            return;
        }
        for (const auto& c : perFactor[fi]) {
            cur.chains[fi] = c;
            rec(fi + 1);
        }
    };
    rec(0);
    return out;
}

Params make_params(const Space& s, int which) {
    Params par;
    for (const auto& f : s.factors) {
        std::vector<Rat> t;
        if (which == 0) {
            int x = 1;
            while ((int)t.size() < f.n) {
                ++x;
                if (is_prime(x)) t.push_back(Rat(x));
            }
        } else {
            for (int i = 1; i <= f.n; ++i) t.push_back(Rat(i * i + 1));
        }
        par.t.push_back(std::move(t));
    }
    return par;
}

namespace {

// block coordinate values at a fixed point, quotient blocks first
std::vector<std::vector<Rat>> block_coords(const bwb::Factor& f, const std::vector<std::vector<int>>& chain,
                                           const std::vector<Rat>& t) {
    int r = (int)f.ks.size();
    std::vector<std::vector<Rat>> out; // B_0, B_1, ..., B_r
    std::vector<bool> inTop(f.n, false);
    for (int i : chain[r - 1]) inTop[i] = true;
    std::vector<Rat> b0;
    for (int i = 0; i < f.n; ++i)
        if (!inTop[i]) b0.push_back(t[i]);
    out.push_back(std::move(b0));
    for (int j = r - 1; j >= 0; --j) {
        // B_{r-j} = S_{j+1} minus S_j  (S_0 empty)
        std::vector<int> diff;
        const auto& hi = chain[j];
        if (j == 0) diff = hi;
        else {
            const auto& lo = chain[j - 1];
            std::set_difference(hi.begin(), hi.end(), lo.begin(), lo.end(), std::back_inserter(diff));
        }
        std::vector<Rat> b;
        for (int i : diff) b.push_back(t[i]);
        out.push_back(std::move(b));
    }
    return out;
}

} // namespace

std::vector<Rat> tangent_weights(const Space& s, const FixedPoint& p, const Params& par) {
    std::vector<Rat> w;
    for (size_t fi = 0; fi < s.factors.size(); ++fi) {
        auto bc = block_coords(s.factors[fi], p.chains[fi], par.t[fi]);
        // tangent pieces Hom(B_b, B_a) for a < b: weights t_a - t_b
        for (size_t a = 0; a < bc.size(); ++a)
            for (size_t b = a + 1; b < bc.size(); ++b)
                for (const Rat& ta : bc[a])
                    for (const Rat& tb : bc[b]) w.push_back(ta - tb);
    }
    return w;
}

std::vector<Rat> bundle_weights(Ctx& ctx, const Decomposed& d, const FixedPoint& p, const Params& par) {
    const Space& s = ctx.space();
    std::vector<Rat> out;
    for (const auto& blk : d.blocks)
        for (const auto& [id, mult] : blk) {
            const bwb::Label& l = ctx.label(id);
            // per factor: sum of (block-label weight . block coords); outer sum
            std::vector<Rat> vals{Rat(0)};
            for (size_t fi = 0; fi < s.factors.size(); ++fi) {
                auto bc = block_coords(s.factors[fi], p.chains[fi], par.t[fi]);
                std::vector<Rat> fvals{Rat(0)};
                int off = 0;
                for (auto& coords : bc) {
                    int bsz = (int)coords.size();
                    combinat::IntVec part(l.v[fi].begin() + off, l.v[fi].begin() + off + bsz);
                    const auto& wm = combinat::weight_multiset(part, bsz);
                    std::vector<Rat> bvals;
                    for (const auto& [w, c] : wm) {
                        Rat v = 0;
                        for (int j = 0; j < bsz; ++j) v += w[j] * coords[j];
                        for (long long i = 0; i < c; ++i) bvals.push_back(v);
                    }
                    std::vector<Rat> next;
                    next.reserve(fvals.size() * bvals.size());
                    for (const Rat& x : fvals)
                        for (const Rat& y : bvals) next.push_back(x + y);
                    fvals = std::move(next);
                    off += bsz;
                }
                std::vector<Rat> next;
                next.reserve(vals.size() * fvals.size());
                for (const Rat& x : vals)
                    for (const Rat& y : fvals) next.push_back(x + y);
                vals = std::move(next);
            }
            for (long long i = 0; i < mult; ++i) out.insert(out.end(), vals.begin(), vals.end());
        }
    return out;
}

Int integrate(const Space& s, const std::function<Rat(const FixedPoint&, const Params&)>& numeratorAt) {
    auto points = fixed_points(s);
    Int result = 0;
    for (int which = 0; which < 2; ++which) {
        Params par = make_params(s, which);
        Rat sum = 0;
        for (const auto& p : points) {
            Rat den = 1;
            for (const Rat& w : tangent_weights(s, p, par)) den *= w;
            sum += numeratorAt(p, par) / den;
        }
        if (denominator(sum) != 1) throw std::logic_error("localization: non-integral result");
        if (which == 0) result = numerator(sum);
        else if (Int(numerator(sum)) != result)
            throw std::logic_error("localization: parameter-dependent result");
    }
    return result;
}

Int anticanonical_degree(Ctx& ctx, const Decomposed& F, int d) {
    const Space& s = ctx.space();
    Int rk = ctx.rank(F);
    if (Int(s.dim()) - rk != d) throw std::invalid_argument("anticanonical_degree: codimension mismatch");
    return integrate(s, [&](const FixedPoint& p, const Params& par) {
        Rat c1 = 0;
        for (const Rat& w : tangent_weights(s, p, par)) c1 += w;
        Rat ctop = 1;
        for (const Rat& w : bundle_weights(ctx, F, p, par)) {
            c1 -= w;
            ctop *= w;
        }
        Rat val = ctop;
        for (int i = 0; i < d; ++i) val *= c1;
        return val;
    });
}

namespace {

using Series = std::vector<Rat>; // coefficients of u^0..u^D

Series series_mul(const Series& a, const Series& b, int D) {
    Series out(D + 1, Rat(0));
    for (int i = 0; i <= D; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= D; ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
    return out;
}

Series series_inv(const Series& a, int D) {
    if (a[0] == 0) throw std::logic_error("series_inv: zero constant term");
    Series out(D + 1, Rat(0));
    out[0] = Rat(1) / a[0];
    for (int k = 1; k <= D; ++k) {
        Rat acc = 0;
        for (int i = 1; i <= k; ++i) acc += a[i] * out[k - i];
        out[k] = -acc / a[0];
    }
    return out;
}

} // namespace

Int hrr_chi(Ctx& ctx, const Decomposed& E) {
    const Space& s = ctx.space();
    const int D = s.dim();
    auto points = fixed_points(s);
    Int result = 0;
    for (int which = 0; which < 2; ++which) {
        Params par = make_params(s, which);
        Series total(D + 1, Rat(0));
        for (const auto& p : points) {
            auto tw = tangent_weights(s, p, par);
            // numerator: sum over E-weights of exp(a u)
            Series num(D + 1, Rat(0));
            for (const Rat& a : bundle_weights(ctx, E, p, par)) {
                Rat pw = 1;
                Int fact = 1;
                for (int k = 0; k <= D; ++k) {
                    if (k > 0) {
                        pw *= a;
                        fact *= k;
                    }
                    num[k] += pw / Rat(fact);
                }
            }
            // denominator: prod over tangent weights of (1 - e^{-bu})/u
            Series den(D + 1, Rat(0));
            den[0] = 1;
            for (const Rat& b : tw) {
                Series g(D + 1, Rat(0));
                Rat pw = b;
                Int fact = 1;
                for (int k = 0; k <= D; ++k) {
                    // (-1)^k b^{k+1} / (k+1)!
                    fact *= (k + 1);
                    g[k] = (k % 2 == 0 ? pw : -pw) / Rat(fact);
                    pw *= b;
                }
                den = series_mul(den, g, D);
            }
            Series contrib = series_mul(num, series_inv(den, D), D);
            for (int k = 0; k <= D; ++k) total[k] += contrib[k];
        }
        for (int k = 0; k < D; ++k)
            if (total[k] != 0) throw std::logic_error("hrr_chi: pole terms failed to cancel");
        Rat chi = total[D];
        if (denominator(chi) != 1) throw std::logic_error("hrr_chi: non-integral result");
        if (which == 0) result = Int(numerator(chi));
        else if (Int(numerator(chi)) != result)
            throw std::logic_error("hrr_chi: parameter-dependent result");
    }
    return result;
}

} // namespace zl::chow
