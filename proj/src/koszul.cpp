#include "koszul.hpp"

#include <algorithm>
#include <stdexcept>

namespace zl::koszul {

namespace {

Int ival_min(const Int& a, const Ival& iv) { return iv.bounded() ? std::min(a, iv.ub) : a; }

// add with unbounded absorption
bool add_ub(const Ival& a, const Ival& b, Int& out) {
    if (!a.bounded() || !b.bounded()) return false;
    out = a.ub + b.ub;
    return true;
}

} // namespace

int System::add_node() {
    Node n;
    n.h.assign(D_ + 1, Ival{});
    nodes_.push_back(std::move(n));
    return (int)nodes_.size() - 1;
}

int System::add_node(const Profile& fixed) {
    Node n;
    n.h = fixed.h;
    n.h.resize(D_ + 1, Ival{Int(0), Int(0)});
    n.chiKnown = true;
    n.chi = fixed.chi;
    nodes_.push_back(std::move(n));
    return (int)nodes_.size() - 1;
}

void System::add_ses(int a, int b, int c) { ses_.push_back({a, b, c}); }

void System::set_chi(int node, Int chi) {
    nodes_[node].chiKnown = true;
    nodes_[node].chi = std::move(chi);
}

bool System::chi_rule(Node& n) {
    if (!n.chiKnown) return false;
    bool changed = false;
    // chi = sum (-1)^q h_q: bound each degree using the extremes of the others
    for (int i = 0; i <= D_; ++i) {
        // h_i = (-1)^i chi - sum_{j != i} (-1)^{j-i} h_j
        bool allBounded = true;
        for (int j = 0; j <= D_ && allBounded; ++j)
            if (j != i && !n.h[j].bounded()) allBounded = false;
        if (!allBounded) continue;
        Int lo = (i % 2 == 0) ? n.chi : -n.chi;
        Int hi = lo;
        for (int j = 0; j <= D_; ++j) {
            if (j == i) continue;
            if ((j - i) % 2 != 0) { // sign -1 contributes +h_j
                hi += n.h[j].ub;
                lo += n.h[j].lb;
            } else {
                hi -= n.h[j].lb;
                lo -= n.h[j].ub;
            }
        }
        if (lo < 0) lo = 0;
        if (lo > n.h[i].lb) { n.h[i].lb = lo; changed = true; }
        if (hi < 0) hi = 0;
        if (!n.h[i].bounded() || hi < n.h[i].ub) { n.h[i].ub = hi; changed = true; }
    }
    return changed;
}

void System::propagate() {
    auto at = [&](const Node& n, int i) -> Ival {
        if (i < 0 || i > D_) return Ival{Int(0), Int(0)};
        return n.h[i];
    };
    int cap = 10 * (int)(ses_.size() + nodes_.size() + 1) * (D_ + 1);
    bool changed = true;
    int iter = 0;
    while (changed && iter++ < cap) {
        changed = false;
        for (const auto& [ai, bi, ci] : ses_) {
            Node &A = nodes_[ai], &B = nodes_[bi], &C = nodes_[ci];
            // chi additivity
            if (A.chiKnown && C.chiKnown && !B.chiKnown) { B.chiKnown = true; B.chi = A.chi + C.chi; changed = true; }
            if (B.chiKnown && C.chiKnown && !A.chiKnown) { A.chiKnown = true; A.chi = B.chi - C.chi; changed = true; }
            if (B.chiKnown && A.chiKnown && !C.chiKnown) { C.chiKnown = true; C.chi = B.chi - A.chi; changed = true; }
            for (int i = 0; i <= D_; ++i) {
                Int v;
                // upper bounds
                if (add_ub(at(A, i), at(C, i), v) && (!B.h[i].bounded() || v < B.h[i].ub)) {
                    B.h[i].ub = v;
                    changed = true;
                }
                if (add_ub(at(B, i), at(C, i - 1), v) && (!A.h[i].bounded() || v < A.h[i].ub)) {
                    A.h[i].ub = v;
                    changed = true;
                }
                if (add_ub(at(B, i), at(A, i + 1), v) && (!C.h[i].bounded() || v < C.h[i].ub)) {
                    C.h[i].ub = v;
                    changed = true;
                }
                // lower bounds from exactness
                auto bump = [&](Node& n, int deg, const Int& lo) {
                    if (deg < 0 || deg > D_) return;
                    if (lo > n.h[deg].lb) {
                        n.h[deg].lb = lo;
                        changed = true;
                    }
                };
                if (at(C, i - 1).bounded()) bump(B, i, at(A, i).lb - at(C, i - 1).ub);
                if (at(A, i + 1).bounded()) bump(B, i, at(C, i).lb - at(A, i + 1).ub);
                if (at(C, i).bounded()) bump(A, i, at(B, i).lb - at(C, i).ub);
                if (at(A, i).bounded()) bump(C, i, at(B, i).lb - at(A, i).ub);
            }
        }
        for (auto& n : nodes_)
            if (chi_rule(n)) changed = true;
        // sanity: empty intervals mean an engine bug or inconsistent input
        for (const auto& n : nodes_)
            for (const auto& iv : n.h)
                if (iv.bounded() && iv.lb > iv.ub)
                    throw std::logic_error("interval propagation produced an empty interval");
    }
}

Profile System::profile(int node) const {
    Profile p;
    p.h = nodes_[node].h;
    if (!nodes_[node].chiKnown) throw std::logic_error("profile: chi not determined");
    p.chi = nodes_[node].chi;
    return p;
}

Profile profile_of_set(Ctx& ctx, const bundles::LabelSet& s) {
    const int D = ctx.space().dim();
    Profile p;
    p.h.assign(D + 1, Ival{Int(0), Int(0)});
    for (const auto& [id, mult] : s) {
        const auto& c = bwb::bott(ctx.space(), ctx.label(id));
        if (c.acyclic) continue;
        Int add = c.dim * mult;
        p.h[c.degree].lb += add;
        p.h[c.degree].ub += add;
        p.chi += (c.degree % 2 == 0) ? add : -add;
    }
    return p;
}

Profile profile_of(Ctx& ctx, const Decomposed& d) {
    const int D = ctx.space().dim();
    if (d.blocks.empty()) {
        Profile p;
        p.h.assign(D + 1, Ival{Int(0), Int(0)});
        return p;
    }
    if (d.blocks.size() == 1) return profile_of_set(ctx, d.blocks[0]);
    System sys(D);
    // F_1 = B_1; 0 -> F_{i-1} -> F_i -> B_i -> 0
    int prev = sys.add_node(profile_of_set(ctx, d.blocks[0]));
    for (size_t i = 1; i < d.blocks.size(); ++i) {
        int bi = sys.add_node(profile_of_set(ctx, d.blocks[i]));
        int fi = sys.add_node();
        sys.add_ses(prev, fi, bi);
        prev = fi;
    }
    sys.propagate();
    return sys.profile(prev);
}

const Decomposed& Problem::wedge_F_dual(int p) {
    if (wedgeFdualCache.empty()) {
        Decomposed Fd = bundles::dual(*ctx, F);
        wedgeFdualCache.reserve(rankF + 1);
        for (int i = 0; i <= rankF; ++i) wedgeFdualCache.push_back(bundles::wedge(*ctx, Fd, i));
    }
    return wedgeFdualCache[p];
}

Problem make_problem(std::shared_ptr<Ctx> ctx, const ExprPtr& F, bool fano) {
    Problem pb;
    pb.ctx = std::move(ctx);
    pb.F = bundles::normalize(*pb.ctx, F);
    Int rk = pb.ctx->rank(pb.F);
    pb.rankF = rk.convert_to<long long>();
    pb.dimY = pb.ctx->space().dim() - (int)pb.rankF;
    if (pb.dimY < 0) throw std::invalid_argument("zero locus has negative expected dimension");
    pb.fanoVanishing = fano;
    return pb;
}

Profile restricted_cohomology(Problem& pb, const Decomposed& G) {
    Ctx& ctx = *pb.ctx;
    const int D = ctx.space().dim();
    const int r = (int)pb.rankF;
    // Koszul: 0 -> C_r -> ... -> C_1 -> C_0 -> G|_Y -> 0, C_p = wedge^p F^v (x) G
    std::vector<Profile> cp(r + 1);
    for (int p = 0; p <= r; ++p) {
        Decomposed term = p == 0 ? G : bundles::tensor(ctx, pb.wedge_F_dual(p), G);
        cp[p] = profile_of(ctx, term);
    }
    System sys(D);
    std::vector<int> cNodes(r + 1);
    for (int p = 0; p <= r; ++p) cNodes[p] = sys.add_node(cp[p]);
    // B_p = im(C_p -> C_{p-1}) for p >= 1; B_0 = G|_Y
    // 0 -> B_{p+1} -> C_p -> B_p -> 0 with B_{r+1} = 0 (so B_r = C_r).
    int prev = cNodes[r]; // plays the role of B_r
    for (int p = r - 1; p >= 1; --p) {
        int bp = sys.add_node();
        sys.add_ses(prev, cNodes[p], bp);
        prev = bp;
    }
    int result;
    if (r == 0) {
        result = cNodes[0];
    } else {
        result = sys.add_node();
        sys.add_ses(prev, cNodes[0], result);
    }
    // chi of the restriction is the alternating sum (exact)
    Int chi = 0;
    for (int p = 0; p <= r; ++p) chi += (p % 2 == 0) ? cp[p].chi : -cp[p].chi;
    sys.set_chi(result, chi);
    sys.propagate();
    Profile out = sys.profile(result);
    // Grothendieck vanishing on Y
    for (int q = pb.dimY + 1; q <= D; ++q) {
        if (out.h[q].lb > 0 && !pb.formal)
            throw std::logic_error("restriction has forced cohomology beyond dim Y");
        out.h[q].lb = 0;
        out.h[q].ub = 0;
    }
    return out;
}

namespace {

void intersect(Ival& a, const Ival& b, bool& changed) {
    if (b.lb > a.lb) {
        a.lb = b.lb;
        changed = true;
    }
    if (b.bounded() && (!a.bounded() || b.ub < a.ub)) {
        a.ub = b.ub;
        changed = true;
    }
    if (a.bounded() && a.lb > a.ub) throw std::logic_error("hodge constraints produced an empty interval");
}

} // namespace

HodgeTable hodge_numbers(Problem& pb) {
    Ctx& ctx = *pb.ctx;
    const int d = pb.dimY;
    const int D = ctx.space().dim();
    HodgeTable tab;
    tab.d = d;
    tab.h.assign(d + 1, std::vector<Ival>(d + 1));
    tab.chiRow.assign(d + 1, Int(0));

    Decomposed Fd = bundles::dual(ctx, pb.F);
    Decomposed omega = bundles::cotangent(ctx);
    std::vector<Decomposed> omegaPow(d + 1);
    std::vector<Decomposed> symFd(d + 1);
    for (int k = 0; k <= d; ++k) {
        omegaPow[k] = bundles::wedge(ctx, omega, k);
        symFd[k] = bundles::sym(ctx, Fd, k);
    }

    for (int j = 0; j <= d; ++j) {
        // 0 -> Sym^j F^v|_Y -> ... -> (Sym^{j-k} F^v (x) Omega^k)|_Y -> ... -> Omega^j_X|_Y -> Omega^j_Y -> 0
        std::vector<Profile> terms(j + 1);
        for (int k = 0; k <= j; ++k) {
            Decomposed t = bundles::tensor(ctx, symFd[j - k], omegaPow[k]);
            terms[k] = restricted_cohomology(pb, t);
        }
        Profile rowProfile;
        if (j == 0) {
            rowProfile = terms[0];
        } else {
            System sys(D);
            std::vector<int> tn(j + 1);
            for (int k = 0; k <= j; ++k) tn[k] = sys.add_node(terms[k]);
            int prev = tn[0]; // W_0 = T_0
            for (int k = 1; k <= j; ++k) {
                int w = sys.add_node(); // W_k (the last one is Omega^j_Y)
                sys.add_ses(prev, tn[k], w);
                prev = w;
            }
            Int chi = 0;
            for (int k = 0; k <= j; ++k)
                chi += ((j - k) % 2 == 0) ? terms[k].chi : -terms[k].chi;
            sys.set_chi(prev, chi);
            sys.propagate();
            rowProfile = sys.profile(prev);
        }
        tab.chiRow[j] = rowProfile.chi;
        for (int q = 0; q <= d; ++q) tab.h[j][q] = rowProfile.h[q];
        for (int q = d + 1; q <= D; ++q)
            if (rowProfile.h[q].lb > 0 && !pb.formal)
                throw std::logic_error("hodge row has cohomology beyond dim Y");
    }

    // constraint tightening
    bool usedSym = false, usedSerre = false, usedFano = false, usedChi = false;
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 10 * (d + 1) * (d + 1) + 10) {
        changed = false;
        if (pb.fanoVanishing) {
            for (int q = 1; q <= d; ++q) {
                bool c = false;
                intersect(tab.h[0][q], Ival{Int(0), Int(0)}, c);
                intersect(tab.h[q][0], Ival{Int(0), Int(0)}, c);
                if (c) usedFano = true, changed = true;
            }
        }
        if (pb.hodgeSymmetry) {
            for (int p = 0; p <= d; ++p)
                for (int q = 0; q <= d; ++q) {
                    bool c = false;
                    intersect(tab.h[p][q], tab.h[q][p], c);
                    if (c) usedSym = true, changed = true;
                }
        }
        if (pb.serreDuality) {
            for (int p = 0; p <= d; ++p)
                for (int q = 0; q <= d; ++q) {
                    bool c = false;
                    intersect(tab.h[p][q], tab.h[d - p][d - q], c);
                    if (c) usedSerre = true, changed = true;
                }
        }
        // chi-row exactness
        for (int p = 0; p <= d; ++p) {
            for (int q = 0; q <= d; ++q) {
                bool allBounded = true;
                for (int t = 0; t <= d && allBounded; ++t)
                    if (t != q && !tab.h[p][t].bounded()) allBounded = false;
                if (!allBounded) continue;
                Int lo = (q % 2 == 0) ? tab.chiRow[p] : -tab.chiRow[p];
                Int hi = lo;
                for (int t = 0; t <= d; ++t) {
                    if (t == q) continue;
                    if ((t - q) % 2 != 0) {
                        hi += tab.h[p][t].ub;
                        lo += tab.h[p][t].lb;
                    } else {
                        hi -= tab.h[p][t].lb;
                        lo -= tab.h[p][t].ub;
                    }
                }
                if (lo < 0) lo = 0;
                if (hi < 0) hi = 0;
                bool c = false;
                intersect(tab.h[p][q], Ival{lo, hi}, c);
                if (c) usedChi = true, changed = true;
            }
        }
    }
    if (usedFano) tab.constraintsUsed.push_back("fano-vanishing");
    if (usedSym) tab.constraintsUsed.push_back("hodge-symmetry");
    if (usedSerre) tab.constraintsUsed.push_back("serre-duality");
    if (usedChi) tab.constraintsUsed.push_back("chi-exactness");
    return tab;
}

TangentReport tangent_cohomology(Problem& pb) {
    Ctx& ctx = *pb.ctx;
    TangentReport rep;
    rep.tangentRestricted = restricted_cohomology(pb, bundles::tangent(ctx));
    rep.bundleRestricted = restricted_cohomology(pb, pb.F);
    const Profile& a = rep.tangentRestricted;
    const Profile& b = rep.bundleRestricted;
    bool higherVanish = true;
    for (size_t q = 1; q < a.h.size(); ++q)
        if (!(a.h[q].exact() && a.h[q].lb == 0 && b.h[q].exact() && b.h[q].lb == 0)) {
            higherVanish = false;
            break;
        }
    if (a.h[0].exact() && b.h[0].exact() && higherVanish) {
        rep.differenceExact = true;
        rep.h0T = a.h[0].lb;
        rep.h0F = b.h[0].lb;
        rep.difference = rep.h0F - rep.h0T;
    }
    // normal sequence 0 -> T_Y -> T_X|_Y -> F|_Y -> 0:
    //   h^0(T_Y) = ker(H^0(T_X|_Y) -> H^0(F|_Y))
    rep.h0TY.lb = a.h[0].lb - (b.h[0].bounded() ? b.h[0].ub : a.h[0].lb);
    if (rep.h0TY.lb < 0) rep.h0TY.lb = 0;
    rep.h0TY.ub = a.h[0].bounded() ? a.h[0].ub : Int(-1);
    //   h^1(T_Y) <= coker(H^0) + h^1(T_X|_Y)
    rep.h1TY.lb = b.h[0].lb - (a.h[0].bounded() ? a.h[0].ub : b.h[0].lb);
    if (rep.h1TY.lb < 0) rep.h1TY.lb = 0;
    if (b.h[0].bounded() && a.h.size() > 1 && a.h[1].bounded())
        rep.h1TY.ub = b.h[0].ub + a.h[1].ub;
    return rep;
}

Int chi_restricted_twist(Problem& pb, const std::vector<int>& twist) {
    Ctx& ctx = *pb.ctx;
    std::uint32_t lid = ctx.line_id(twist);
    Int chi = 0;
    for (int p = 0; p <= (int)pb.rankF; ++p) {
        const Decomposed& w = pb.wedge_F_dual(p);
        Int part = 0;
        for (const auto& blk : w.blocks)
            for (const auto& [id, mult] : blk) {
                bwb::Label l = bwb::add_labels(ctx.label(id), ctx.label(lid));
                part += bwb::euler_char(ctx.space(), l) * mult;
            }
        chi += (p % 2 == 0) ? part : -part;
    }
    return chi;
}

Int h0_anticanonical(Problem& pb) {
    Ctx& ctx = *pb.ctx;
    // D = line bundle with divisor c1(T_X) - c1(F)
    std::vector<int> tw = bwb::canonical_twist(ctx.space());
    for (int& x : tw) x = -x; // c1(T_X)
    auto c1F = ctx.first_chern(pb.F);
    for (size_t i = 0; i < tw.size(); ++i) tw[i] -= c1F[i];
    return chi_restricted_twist(pb, tw);
}

} // namespace zl::koszul
