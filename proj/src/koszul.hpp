#pragma once

#include "bundle.hpp"
#include "chow.hpp"

#include <string>

// Cohomology of restrictions to zero loci via Koszul resolutions, Hodge
// numbers via exterior powers of the conormal sequence, tangent cohomology
// via the normal sequence. Where boundary maps leave ambiguity the engine
// reports per-degree intervals [lb,ub] and applies the declared constraint
// set to shrink them; Euler characteristics are always exact.
namespace zl::koszul {

using bundles::Ctx;
using bundles::Decomposed;
using bundles::ExprPtr;

struct Ival {
    Int lb = 0;
    Int ub = -1; // ub < 0 means unbounded
    bool bounded() const { return ub >= 0; }
    bool exact() const { return bounded() && lb == ub; }
};

struct Profile {
    std::vector<Ival> h; // degrees 0..D
    Int chi = 0;
    bool exact() const {
        for (const auto& iv : h)
            if (!iv.exact()) return false;
        return true;
    }
};

// A network of sheaf nodes tied by short exact sequences 0->A->B->C->0.
// Propagation runs the long-exact-sequence bounds and chi additivity to a
// fixpoint (monotone shrinking; capped as a guard).
class System {
public:
    explicit System(int maxDegree) : D_(maxDegree) {}
    int add_node();                       // unknown profile
    int add_node(const Profile& fixed);   // known (possibly interval) profile
    void add_ses(int a, int b, int c);
    void set_chi(int node, Int chi);
    void propagate();
    Profile profile(int node) const;

private:
    int D_;
    struct Node {
        std::vector<Ival> h;
        bool chiKnown = false;
        Int chi = 0;
    };
    std::vector<Node> nodes_;
    std::vector<std::array<int, 3>> ses_;
    bool chi_rule(Node& n);
};

// exact profile of a completely reducible multiset
Profile profile_of_set(Ctx& ctx, const bundles::LabelSet& s);
// profile of a filtered bundle: exact per block, interval-propagated overall
Profile profile_of(Ctx& ctx, const Decomposed& d);

struct Problem {
    std::shared_ptr<Ctx> ctx;
    Decomposed F;
    long long rankF = 0;
    int dimY = 0;
    bool fanoVanishing = true;
    bool hodgeSymmetry = true;
    bool serreDuality = true;
    // Koszul exactness taken formally (bundles with sections only on a
    // partial zero locus); suppresses the beyond-dim checks.
    bool formal = false;

    std::vector<Decomposed> wedgeFdualCache;
    const Decomposed& wedge_F_dual(int p);
};

Problem make_problem(std::shared_ptr<Ctx> ctx, const ExprPtr& F, bool fano = true);

// profile of G restricted to Y = Z(F), through the Koszul resolution
Profile restricted_cohomology(Problem& pb, const Decomposed& G);

struct HodgeTable {
    int d = 0;
    std::vector<std::vector<Ival>> h; // h[p][q]
    std::vector<Int> chiRow;          // chi(Omega^p_Y)
    std::vector<std::string> constraintsUsed;
    bool pinched() const {
        for (const auto& row : h)
            for (const auto& iv : row)
                if (!iv.exact()) return false;
        return true;
    }
};

HodgeTable hodge_numbers(Problem& pb);

struct TangentReport {
    Profile tangentRestricted; // T_X|_Y
    Profile bundleRestricted;  // F|_Y
    Ival h0TY, h1TY;           // bounds from the normal sequence
    bool differenceExact = false;
    Int h0T = 0, h0F = 0, difference = 0; // h^1(T_Y) - h^0(T_Y) when exact
};

TangentReport tangent_cohomology(Problem& pb);

// exact chi(Y, -K_Y) = h^0(-K_Y) for Fano Y
Int h0_anticanonical(Problem& pb);

// exact chi of a line-bundle twist restricted to Y
Int chi_restricted_twist(Problem& pb, const std::vector<int>& twist);

} // namespace zl::koszul
