#include "bwb.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace zl::bwb {

Factor Factor::projective(int m) {
    if (m < 1) throw std::invalid_argument("P(m) needs m >= 1");
    Factor f;
    f.kind = Kind::Projective;
    f.n = m + 1;
    f.ks = {1};
    return f;
}

Factor Factor::grassmannian(int k, int n) {
    if (!(0 < k && k < n)) throw std::invalid_argument("Gr(k,n) needs 0 < k < n");
    Factor f;
    f.kind = Kind::Grassmannian;
    f.n = n;
    f.ks = {k};
    return f;
}

Factor Factor::flag(std::vector<int> ks, int n) {
    if (ks.empty()) throw std::invalid_argument("Fl needs at least one step");
    for (size_t i = 0; i + 1 < ks.size(); ++i)
        if (ks[i] >= ks[i + 1]) throw std::invalid_argument("Fl steps must increase");
    if (ks.front() < 1 || ks.back() >= n) throw std::invalid_argument("Fl steps out of range");
    Factor f;
    f.kind = Kind::Flag;
    f.n = n;
    f.ks = std::move(ks);
    return f;
}

Factor Factor::weighted(std::vector<int> w) {
    if (w.size() < 2) throw std::invalid_argument("WP needs >= 2 weights");
    Factor f;
    f.kind = Kind::WeightedProjective;
    f.n = (int)w.size();
    f.weights = std::move(w);
    return f;
}

int Factor::dim() const {
    switch (kind) {
        case Kind::Projective: return n - 1;
        case Kind::Grassmannian: return ks[0] * (n - ks[0]);
        case Kind::Flag: {
            int d = 0, prev = 0;
            for (int k : ks) { d += (k - prev) * (n - k); prev = k; }
            return d;
        }
        case Kind::WeightedProjective: return n - 1;
    }
    return 0;
}

int Factor::picard_rank() const {
    return kind == Kind::Flag ? (int)ks.size() : 1;
}

std::vector<int> Factor::blocks() const {
    if (kind == Kind::WeightedProjective) return {};
    std::vector<int> b;
    b.push_back(n - ks.back());
    for (int i = (int)ks.size() - 1; i >= 1; --i) b.push_back(ks[i] - ks[i - 1]);
    b.push_back(ks[0]);
    return b;
}

std::string Factor::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Projective: os << "P(" << n - 1 << ")"; break;
        case Kind::Grassmannian: os << "Gr(" << ks[0] << "," << n << ")"; break;
        case Kind::Flag: {
            os << "Fl(";
            for (size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << ks[i];
            os << ";" << n << ")";
            break;
        }
        case Kind::WeightedProjective: {
            os << "WP(";
            for (size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
            os << ")";
            break;
        }
    }
    return os.str();
}

int Space::dim() const {
    int d = 0;
    for (const auto& f : factors) d += f.dim();
    return d;
}

int Space::picard_rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.picard_rank();
    return r;
}

bool Space::has_weighted() const {
    for (const auto& f : factors)
        if (f.weighted_factor()) return true;
    return false;
}

std::string Space::str() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " x ";
        s += factors[i].str();
    }
    return s;
}

Label canonicalize(const Space& s, Label l) {
    for (size_t i = 0; i < s.factors.size(); ++i) {
        auto& v = l.v[i];
        if (v.empty()) continue;
        int c = v.back();
        if (c != 0)
            for (int& x : v) x -= c;
    }
    return l;
}

bool label_dominant(const Space& s, const Label& l) {
    if (l.v.size() != s.factors.size()) return false;
    for (size_t i = 0; i < s.factors.size(); ++i) {
        const auto& f = s.factors[i];
        if ((int)l.v[i].size() != f.n) return false;
        int off = 0;
        for (int b : f.blocks()) {
            for (int j = 0; j + 1 < b; ++j)
                if (l.v[i][off + j] < l.v[i][off + j + 1]) return false;
            off += b;
        }
    }
    return true;
}

Label dual_label(const Space& s, const Label& l) {
    Label d(l);
    for (size_t i = 0; i < s.factors.size(); ++i) {
        int off = 0;
        for (int b : s.factors[i].blocks()) {
            std::reverse(d.v[i].begin() + off, d.v[i].begin() + off + b);
            for (int j = 0; j < b; ++j) d.v[i][off + j] = -d.v[i][off + j];
            off += b;
        }
    }
    return d;
}

Label line_label(const Space& s, const std::vector<int>& twist) {
    if ((int)twist.size() != s.picard_rank())
        throw std::invalid_argument("twist length must equal Picard rank");
    Label l;
    size_t t = 0;
    for (const auto& f : s.factors) {
        IntVec v(f.n, 0);
        if (f.kind == Factor::Kind::Flag) {
            // O(a_1,...,a_r) = tensor of (det U_i^dual)^{a_i}: subtract a_i on
            // the entries of U_i, i.e. on the last k_i coordinates.
            for (size_t j = 0; j < f.ks.size(); ++j) {
                int a = twist[t + j];
                for (int p = f.n - f.ks[j]; p < f.n; ++p) v[p] -= a;
            }
            t += f.ks.size();
        } else {
            // O(a) = (det Q)^a up to a trivial determinant: add a on Q entries
            int a = twist[t++];
            for (int p = 0; p < f.n - f.ks[0]; ++p) v[p] += a;
        }
        l.v.push_back(std::move(v));
    }
    return canonicalize(s, l);
}

Label add_labels(const Label& a, const Label& b) {
    Label r(a);
    for (size_t i = 0; i < r.v.size(); ++i)
        for (size_t j = 0; j < r.v[i].size(); ++j) r.v[i][j] += b.v[i][j];
    return r;
}

Int label_rank(const Space& s, const Label& l) {
    Int r = 1;
    for (size_t i = 0; i < s.factors.size(); ++i) {
        int off = 0;
        for (int b : s.factors[i].blocks()) {
            IntVec part(l.v[i].begin() + off, l.v[i].begin() + off + b);
            r *= combinat::weyl_dim(part, b);
            off += b;
        }
    }
    return r;
}

std::vector<int> label_first_chern(const Space& s, const Label& l) {
    std::vector<int> c1;
    Int rank = label_rank(s, l);
    if (rank == 0) throw std::invalid_argument("first_chern of rank-0 label");
    for (size_t i = 0; i < s.factors.size(); ++i) {
        const auto& f = s.factors[i];
        auto blocks = f.blocks();
        // per-block determinant exponents c_j = |lam_j| * rank / size_j
        std::vector<Rat> cs;
        int off = 0;
        for (int b : blocks) {
            long long sum = 0;
            for (int j = 0; j < b; ++j) sum += l.v[i][off + j];
            cs.push_back(Rat(sum * rank, b));
            off += b;
        }
        // express in Picard coordinates u_i = [det U_i^dual]; with blocks
        //   B_0 = O^n/U_r, B_j = U_{r-j+1}/U_{r-j}:
        //   [det B_0] = u_r,  [det B_j] = -u_{r-j+1} + u_{r-j}  (u_0 = 0)
        int r = f.picard_rank();
        std::vector<Rat> u(r, 0);
        int nb = (int)blocks.size();
        for (int j = 0; j < nb; ++j) {
            if (j == 0) {
                u[r - 1] += cs[0];
            } else {
                u[r - j] -= cs[j];
                if (r - j - 1 >= 0) u[r - j - 1] += cs[j];
            }
        }
        for (int j = 0; j < r; ++j) {
            if (denominator(u[j]) != 1) throw std::logic_error("non-integral first Chern class");
            Int v = numerator(u[j]);
            c1.push_back((int)v.convert_to<long long>());
        }
    }
    return c1;
}

namespace {

struct BottKey {
    Space space;
    Label label;
    bool operator==(const BottKey&) const = default;
};
struct BottKeyHash {
    std::size_t operator()(const BottKey& k) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (const auto& f : k.space.factors) {
            h = hash_ints(f.ks.data(), f.ks.size(), h) * 31 + f.n;
            h = h * 131 + (int)f.kind;
        }
        return h ^ LabelHash{}(k.label);
    }
};

std::unordered_map<BottKey, Cohomology, BottKeyHash>& bott_cache() {
    static auto* c = new std::unordered_map<BottKey, Cohomology, BottKeyHash>();
    return *c;
}
std::mutex bott_mutex;

} // namespace

const Cohomology& bott(const Space& s, const Label& l) {
    if (s.has_weighted()) throw std::invalid_argument("bott: weighted factor present");
    BottKey key{s, canonicalize(s, l)};
    {
        std::lock_guard<std::mutex> lk(bott_mutex);
        auto it = bott_cache().find(key);
        if (it != bott_cache().end()) return it->second;
    }
    Cohomology result;
    result.acyclic = false;
    result.degree = 0;
    result.dim = 1;
    for (size_t i = 0; i < s.factors.size(); ++i) {
        const int n = s.factors[i].n;
        IntVec mu(key.label.v[i]);
        for (int j = 0; j < n; ++j) mu[j] += n - 1 - j;
        int inversions = 0;
        bool repeat = false;
        for (int a = 0; a < n && !repeat; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (mu[a] == mu[b]) { repeat = true; break; }
                if (mu[a] < mu[b]) ++inversions;
            }
        if (repeat) {
            result = Cohomology{};
            break;
        }
        std::sort(mu.begin(), mu.end(), std::greater<int>());
        for (int j = 0; j < n; ++j) mu[j] -= n - 1 - j;
        result.degree += inversions;
        result.dim *= combinat::weyl_dim(mu, n);
        result.rep.push_back(std::move(mu));
    }
    std::lock_guard<std::mutex> lk(bott_mutex);
    auto [it, ok] = bott_cache().emplace(std::move(key), std::move(result));
    (void)ok;
    return it->second;
}

Int euler_char(const Space& s, const Label& l) {
    const Cohomology& c = bott(s, l);
    if (c.acyclic) return 0;
    return (c.degree % 2 == 0) ? c.dim : -c.dim;
}

std::vector<int> canonical_twist(const Space& s) {
    // omega = det of the cotangent bundle; compute per factor from the block
    // structure: for blocks (b_0,...,b_m) the tangent is  ⊕_{a<b} B_a ⊗ B_b^v
    // ... the tested consequence: Gr(k,n) gives O(-n), P^m gives O(-m-1).
    std::vector<int> tw;
    for (const auto& f : s.factors) {
        if (f.weighted_factor()) throw std::invalid_argument("canonical_twist: weighted factor");
        if (f.kind != Factor::Kind::Flag) {
            tw.push_back(-f.n);
        } else {
            // c1(T) in Picard coordinates: computed from the graded pieces
            // Hom(B_a, B_b), a > b in sub-to-quotient order. Use
            // label_first_chern on a one-factor space for each piece.
            Space one{{f}};
            auto blocks = f.blocks();
            int nb = (int)blocks.size();
            std::vector<int> c1(f.picard_rank(), 0);
            std::vector<int> offs(nb + 1, 0);
            for (int j = 0; j < nb; ++j) offs[j + 1] = offs[j] + blocks[j];
            for (int a = 0; a < nb; ++a)
                for (int b = a + 1; b < nb; ++b) {
                    // piece Hom(B_b, B_a) = B_b^v ⊗ B_a   (tangent directions
                    // move the deeper subspace toward the more-quotient side)
                    Label piece;
                    IntVec v(f.n, 0);
                    // highest weight of B_a ⊗ B_b^v: +1 on first entry of
                    // block a, -1 on last entry of block b — but we need the
                    // full det, so use c1(B_a^{⊗ rk B_b}) style: c1(Hom) =
                    // rk(B_a) * c1(B_b^v) + rk(B_b) * c1(B_a). Build the two
                    // det labels directly instead.
                    for (int j = offs[a]; j < offs[a + 1]; ++j) v[j] += blocks[b];
                    for (int j = offs[b]; j < offs[b + 1]; ++j) v[j] -= blocks[a];
                    piece.v.push_back(v);
                    auto cc = label_first_chern(one, piece);
                    for (size_t q = 0; q < cc.size(); ++q) c1[q] += cc[q];
                }
            for (int q : c1) tw.push_back(-q);
        }
    }
    return tw;
}

} // namespace zl::bwb
