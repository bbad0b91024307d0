#pragma once

#include "bigint.hpp"

#include <map>
#include <unordered_map>
#include <vector>

// Partition and symmetric-function combinatorics on GL(m) characters:
// Littlewood-Richardson products, weight multisets of irreducibles, the Weyl
// dimension formula, and the triangular decomposition of a character into
// irreducibles. Everything here is exact integer arithmetic.
namespace zl::combinat {

// Weakly decreasing, non-negative, trailing zeros stripped.
using Partition = std::vector<int>;

// A GL(m) weight or dominant weight; entries may be negative.
using IntVec = std::vector<int>;

// Multiset of torus weights with positive multiplicities.
using WeightMap = std::unordered_map<IntVec, long long, IntVecHash>;

Partition trim(Partition p);
bool is_dominant(const IntVec& v);
int vec_sum(const IntVec& v);

// dim of the irreducible GL(m) module with highest weight lam
// (lam weakly decreasing, length <= m; padded with zeros).
Int weyl_dim(const IntVec& lam, int m);

// All weights of the irreducible with highest weight lam, with multiplicity.
// lam must be weakly decreasing of length <= m; negative entries are handled
// by a determinant shift. The returned reference is owned by a process-wide
// cache and stays valid.
const WeightMap& weight_multiset(const IntVec& lam, int m);

// Littlewood-Richardson product: all nu with c^nu_{lam,mu} > 0.
// Arguments may have negative entries (shift-equivariance of LR).
std::map<IntVec, long long> lr_multiply(const IntVec& lam, const IntVec& mu);

// A label for an irreducible of a product GL(b_1) x ... x GL(b_s):
// one dominant IntVec per block.
using BlockLabel = std::vector<IntVec>;

// Expand a genuine character of prod GL(block_sizes) into irreducibles by
// repeatedly extracting the lex-maximal blockwise-sorted weight. Throws
// std::invalid_argument if the input is not a character.
std::map<BlockLabel, long long> decompose_character(WeightMap w, const std::vector<int>& block_sizes);

} // namespace zl::combinat
