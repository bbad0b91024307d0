#pragma once

#include "bundle.hpp"

#include <functional>

// Intersection numbers via torus fixed-point localization, in exact rational
// arithmetic. Every sum is evaluated with two independent parameter choices
// and must agree and be an integer; a violation is an internal error.
namespace zl::chow {

using bundles::Ctx;
using bundles::Decomposed;
using bwb::Space;

// One fixed point: per factor a chain of nested index subsets (one subset for
// a Grassmannian, k_1 c ... c k_r for a flag). Indices are 0-based.
struct FixedPoint {
    std::vector<std::vector<std::vector<int>>> chains;
};

std::vector<FixedPoint> fixed_points(const Space& s);

struct Params {
    std::vector<std::vector<Rat>> t; // per factor, n pairwise distinct values
};
Params make_params(const Space& s, int which); // which = 0 (primes) or 1 (i^2+1)

// tangent weights of the space at a fixed point
std::vector<Rat> tangent_weights(const Space& s, const FixedPoint& p, const Params& par);

// weights (with multiplicity, flattened) of a decomposed bundle at a point
std::vector<Rat> bundle_weights(Ctx& ctx, const Decomposed& d, const FixedPoint& p, const Params& par);

// sum over fixed points of numerator(point) / prod(tangent weights);
// checked integral and parameter-independent
Int integrate(const Space& s,
              const std::function<Rat(const FixedPoint&, const Params&)>& numerator);

// integral of (c1(T_X) - c1(F))^d * c_top(F); d = dim X - rank F
Int anticanonical_degree(Ctx& ctx, const Decomposed& F, int d);

// chi(E) by a holomorphic-Lefschetz-style localization with exact truncated
// power series; equals bwb::euler_char on irreducibles
Int hrr_chi(Ctx& ctx, const Decomposed& E);

} // namespace zl::chow
