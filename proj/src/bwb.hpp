#pragma once

#include "bigint.hpp"
#include "combinat.hpp"

#include <optional>
#include <string>
#include <vector>

// Spaces (products of Grassmannians and partial flag varieties) and Bott's
// algorithm for the cohomology of irreducible homogeneous bundles.
//
// Conventions, pinned by the test suite:
//  * a factor Gr(k,n) carries blocks (Q | U) of sizes (n-k, k), quotient side
//    first; Fl(k_1<...<k_r, n) carries (O^n/U_r | U_r/U_{r-1} | ... | U_1);
//  * an irreducible label is one full length-n vector per factor, weakly
//    decreasing within each block;
//  * Bott: mu = lambda + rho with rho = (n-1,...,0); a repeated entry kills
//    all cohomology of the factor, otherwise H^l is the irreducible with
//    highest weight sort(mu) - rho, l = #inversions of mu;
//  * twisting by O(t) on a Grassmannian factor adds t to every Q-block entry.
namespace zl::bwb {

using combinat::IntVec;

struct Factor {
    enum class Kind { Projective, Grassmannian, Flag, WeightedProjective };
    Kind kind = Kind::Projective;
    int n = 0;               // ambient rank (Gr/Fl); for P^m this is m+1
    std::vector<int> ks;     // subspace dims: {k} for Gr, {k_1<...<k_r} for Fl
    std::vector<int> weights; // WeightedProjective only

    static Factor projective(int m);
    static Factor grassmannian(int k, int n);
    static Factor flag(std::vector<int> ks, int n);
    static Factor weighted(std::vector<int> w);

    bool weighted_factor() const { return kind == Kind::WeightedProjective; }
    int dim() const;
    int picard_rank() const; // 1 for Gr/P, r for Fl, 1 for WP
    // block sizes, quotient side first; empty for WP
    std::vector<int> blocks() const;
    std::string str() const;
    bool operator==(const Factor&) const = default;
};

struct Space {
    std::vector<Factor> factors;
    int dim() const;
    int picard_rank() const;
    bool has_weighted() const;
    std::string str() const;
    bool operator==(const Space&) const = default;
};

// One length-n vector per factor, blockwise weakly decreasing.
struct Label {
    std::vector<IntVec> v;
    bool operator==(const Label&) const = default;
};

struct LabelHash {
    std::size_t operator()(const Label& l) const { return IntVecVecHash{}(l.v); }
};

// Canonical form: shift each factor's vector so its last entry is 0. The
// shift changes only the equivariant structure, never cohomology dimensions.
Label canonicalize(const Space& s, Label l);

bool label_dominant(const Space& s, const Label& l);

// Blockwise negate-and-reverse.
Label dual_label(const Space& s, const Label& l);

// Line-bundle label for a twist vector over the space's Picard coordinates
// (factor order; a flag factor of r steps contributes r coordinates,
// a_i <-> det U_i^dual).
Label line_label(const Space& s, const std::vector<int>& twist);

// Add a line label (or general twist) entrywise.
Label add_labels(const Label& a, const Label& b);

Int label_rank(const Space& s, const Label& l);

// c1 of the label's bundle as a divisor in Picard coordinates.
std::vector<int> label_first_chern(const Space& s, const Label& l);

struct Cohomology {
    bool acyclic = true;
    int degree = 0; // only valid when !acyclic
    Int dim = 0;
    // GL labels of the cohomology representation, one dominant vector per
    // factor (H^degree = outer tensor product of these).
    std::vector<IntVec> rep;
};

// Bott's algorithm on the whole product (Kunneth: degrees add, dims multiply).
// Rejects spaces containing weighted factors.
const Cohomology& bott(const Space& s, const Label& l);

Int euler_char(const Space& s, const Label& l);

// Canonical line bundle as a twist vector (e.g. O(-n) on Gr(k,n)).
std::vector<int> canonical_twist(const Space& s);

} // namespace zl::bwb
