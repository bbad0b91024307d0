#include "chow.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace zl;
using bundles::Ctx;
using bundles::Expr;
using bwb::Factor;
using bwb::Space;

namespace {

Rat line_weight_at(Ctx& ctx, const bundles::Decomposed& line, const chow::FixedPoint& p,
                   const chow::Params& par) {
    auto w = chow::bundle_weights(ctx, line, p, par);
    REQUIRE(w.size() == 1);
    return w[0];
}

} // namespace

TEST_CASE("point class on P^3") {
    Ctx ctx(Space{{Factor::projective(3)}});
    auto h = bundles::normalize(ctx, Expr::line({1}));
    Int got = chow::integrate(ctx.space(), [&](const chow::FixedPoint& p, const chow::Params& par) {
        Rat w = line_weight_at(ctx, h, p, par);
        return w * w * w;
    });
    CHECK(got == 1);
}

TEST_CASE("degree of Gr(2,4) and Gr(2,5) against the Pieri oracle") {
    {
        Ctx ctx(Space{{Factor::grassmannian(2, 4)}});
        auto o1 = bundles::normalize(ctx, Expr::line({1}));
        Int got = chow::integrate(ctx.space(), [&](const chow::FixedPoint& p, const chow::Params& par) {
            Rat w = line_weight_at(ctx, o1, p, par);
            Rat v = 1;
            for (int i = 0; i < 4; ++i) v *= w;
            return v;
        });
        CHECK(got == 2);
        CHECK(oracles::degree_sigma1(2, 4) == 2);
    }
    {
        Ctx ctx(Space{{Factor::grassmannian(2, 5)}});
        auto o1 = bundles::normalize(ctx, Expr::line({1}));
        Int got = chow::integrate(ctx.space(), [&](const chow::FixedPoint& p, const chow::Params& par) {
            Rat w = line_weight_at(ctx, o1, p, par);
            Rat v = 1;
            for (int i = 0; i < 6; ++i) v *= w;
            return v;
        });
        CHECK(got == 5);
        CHECK(oracles::degree_sigma1(2, 5) == 5);
    }
}

TEST_CASE("anticanonical degrees") {
    {
        // a hyperplane in P^4 is P^3: (-K)^3 = 64
        Ctx ctx(Space{{Factor::projective(4)}});
        auto F = bundles::normalize(ctx, Expr::line({1}));
        CHECK(chow::anticanonical_degree(ctx, F, 3) == 64);
    }
    {
        // quintic del Pezzo surface in Gr(2,5): K^2 = 5
        Ctx ctx(Space{{Factor::grassmannian(2, 5)}});
        auto F = bundles::normalize(
            ctx, Expr::sum(Expr::sum(Expr::line({1}), Expr::line({1})),
                           Expr::sum(Expr::line({1}), Expr::line({1}))));
        CHECK(chow::anticanonical_degree(ctx, F, 2) == 5);
    }
    {
        // the worked-example threefold: (-K)^3 = 22
        Ctx ctx(Space{{Factor::projective(2), Factor::grassmannian(2, 4)}});
        auto F = bundles::normalize(
            ctx, Expr::sum(Expr::twisted(Expr::dual(Expr::taut(true, 1, 1)), {1, 0}),
                           Expr::line({0, 2})));
        CHECK(chow::anticanonical_degree(ctx, F, 3) == 22);
    }
}

TEST_CASE("codimension mismatch is rejected") {
    Ctx ctx(Space{{Factor::projective(4)}});
    auto F = bundles::normalize(ctx, Expr::line({1}));
    CHECK_THROWS(chow::anticanonical_degree(ctx, F, 2));
}

TEST_CASE("holomorphic Lefschetz chi") {
    {
        Ctx ctx(Space{{Factor::projective(2)}});
        auto E = bundles::normalize(ctx, Expr::line({2}));
        CHECK(chow::hrr_chi(ctx, E) == 6);
    }
    {
        Ctx ctx(Space{{Factor::grassmannian(2, 4)}});
        auto E = bundles::normalize(ctx, Expr::line({1}));
        CHECK(chow::hrr_chi(ctx, E) == 6);
    }
    {
        // a non-line irreducible with higher cohomology only
        Ctx ctx(Space{{Factor::grassmannian(2, 4)}});
        auto E = bundles::normalize(ctx, Expr::twisted(Expr::taut(true, 0, 1), {-2}));
        CHECK(chow::hrr_chi(ctx, E) ==
              bwb::euler_char(ctx.space(), ctx.label(E.blocks[0].begin()->first)));
    }
}

TEST_CASE("chi of a filtered bundle is the sum over its graded pieces") {
    Ctx ctx(Space{{Factor::projective(3)}});
    auto lam = bundles::normalize(ctx, Expr::ext({Expr::twisted(Expr::taut(false, 0, 1), {-1}),
                                                  Expr::sym(2, Expr::taut(false, 0, 1))}));
    Int viaBott = 0;
    for (const auto& blk : lam.blocks)
        for (const auto& [id, c] : blk) viaBott += bwb::euler_char(ctx.space(), ctx.label(id)) * c;
    CHECK(chow::hrr_chi(ctx, lam) == viaBott);
}
