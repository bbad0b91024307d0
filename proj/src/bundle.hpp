#pragma once

#include "bwb.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

// Bundle-expression algebra: syntax trees of homogeneous bundles and their
// normal forms as ordered filtrations (sub-to-quotient) of multisets of
// irreducible labels. Extensions carry associated-graded data only.
namespace zl::bundles {

using bwb::Label;
using bwb::Space;
using combinat::IntVec;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Op { Zero, Line, Taut, Dual, Twist, Tensor, Sum, Wedge, Sym, Schur, Ext };
    Op op = Op::Zero;
    std::vector<int> twist;   // Line / Twist
    bool tautU = true;        // Taut: U vs Q
    int factor = 0;           // Taut: 0-based factor index
    int tautIdx = 1;          // Taut: 1-based step index within a flag factor
    int power = 0;            // Wedge / Sym
    IntVec schur;             // Schur
    std::vector<ExprPtr> kids;

    static ExprPtr zero();
    static ExprPtr line(std::vector<int> twist);
    static ExprPtr taut(bool isU, int factor, int idx);
    static ExprPtr dual(ExprPtr e);
    static ExprPtr twisted(ExprPtr e, std::vector<int> t);
    static ExprPtr tensor(ExprPtr a, ExprPtr b);
    static ExprPtr sum(ExprPtr a, ExprPtr b);
    static ExprPtr wedge(int k, ExprPtr e);
    static ExprPtr sym(int k, ExprPtr e);
    static ExprPtr schur_of(IntVec lam, ExprPtr e);
    static ExprPtr ext(std::vector<ExprPtr> pieces);
};

// multiset of interned irreducible labels
using LabelSet = std::unordered_map<std::uint32_t, long long>;

// Completely reducible pieces of a filtration, sub-to-quotient.
struct Decomposed {
    std::vector<LabelSet> blocks;
    bool zero() const;
};

// Per-space context: label interning plus the pure-function caches for
// tensor products and plethysms. Thread-safe; duplicate computation of the
// same key is allowed and yields identical values.
class Ctx {
public:
    explicit Ctx(Space s);

    const Space& space() const { return space_; }
    std::uint32_t intern(const Label& l);
    const Label& label(std::uint32_t id) const;
    std::uint32_t line_id(const std::vector<int>& twist);
    std::uint32_t unit_id(); // O, the trivial line bundle

    std::vector<std::pair<std::uint32_t, long long>> mul_labels(std::uint32_t a, std::uint32_t b);
    LabelSet mul_sets(const LabelSet& a, const LabelSet& b);
    // exterior/symmetric/Schur powers of m copies of one irreducible
    LabelSet power_of_label(char which, std::uint32_t id, long long mult, int k,
                            const IntVec& lam = {});
    LabelSet wedge_set(const LabelSet& s, int k);
    LabelSet sym_set(const LabelSet& s, int k);
    LabelSet schur_set(const LabelSet& s, const IntVec& lam);
    LabelSet dual_set(const LabelSet& s);
    LabelSet twist_set(const LabelSet& s, std::uint32_t lineId);

    Int set_rank(const LabelSet& s) const;
    Int rank(const Decomposed& d) const;
    std::vector<int> first_chern(const Decomposed& d) const;

private:
    Space space_;
    mutable std::mutex mu_;
    std::vector<Label> labels_;
    std::unordered_map<Label, std::uint32_t, bwb::LabelHash> ids_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, long long>>> mulCache_;
    struct PowKey {
        char which;
        std::uint32_t id;
        long long mult;
        int k;
        IntVec lam;
        bool operator==(const PowKey&) const = default;
    };
    struct PowKeyHash {
        std::size_t operator()(const PowKey& p) const {
            return hash_ints(p.lam.data(), p.lam.size(),
                             (std::size_t)p.id * 1000003 + p.k * 131 + (std::size_t)p.mult * 31 + p.which);
        }
    };
    std::unordered_map<PowKey, LabelSet, PowKeyHash> powCache_;
};

Decomposed normalize(Ctx& ctx, const ExprPtr& e);
Decomposed dual(Ctx& ctx, const Decomposed& d);
Decomposed tensor(Ctx& ctx, const Decomposed& a, const Decomposed& b);
Decomposed wedge(Ctx& ctx, const Decomposed& d, int k);
Decomposed sym(Ctx& ctx, const Decomposed& d, int k);

Decomposed cotangent(Ctx& ctx);
Decomposed tangent(Ctx& ctx);

// Structural rank/c1 directly from an expression (used to cross-check the
// normal form).
Int expr_rank(Ctx& ctx, const ExprPtr& e);
std::vector<int> expr_first_chern(Ctx& ctx, const ExprPtr& e);

} // namespace zl::bundles
