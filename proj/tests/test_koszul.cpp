#include "koszul.hpp"

#include <doctest.h>

using namespace zl;
using bundles::Ctx;
using bundles::Expr;
using bundles::ExprPtr;
using bwb::Factor;
using bwb::Space;

namespace {

koszul::Problem problem216() {
    auto ctx = std::make_shared<Ctx>(Space{{Factor::projective(2), Factor::grassmannian(2, 4)}});
    ExprPtr F = Expr::sum(Expr::twisted(Expr::dual(Expr::taut(true, 1, 1)), {1, 0}),
                          Expr::line({0, 2}));
    return koszul::make_problem(ctx, F, true);
}

void check_profile(const koszul::Profile& p, const std::vector<long long>& dims) {
    for (size_t q = 0; q < p.h.size(); ++q) {
        long long want = q < dims.size() ? dims[q] : 0;
        INFO("degree ", q);
        CHECK(p.h[q].exact());
        CHECK(p.h[q].lb == want);
    }
}

} // namespace

TEST_CASE("worked example: structure sheaf of the zero locus") {
    auto pb = problem216();
    auto prof = koszul::restricted_cohomology(pb, bundles::normalize(*pb.ctx, Expr::line({0, 0})));
    check_profile(prof, {1});
    CHECK(prof.chi == 1);
}

TEST_CASE("worked example: ambient groups feeding the conormal sequence") {
    auto pb = problem216();
    Ctx& ctx = *pb.ctx;
    auto Fd = bundles::dual(ctx, pb.F);

    // h^4(F^v (x) F^v) = 1, everything else zero
    auto ff = koszul::profile_of(ctx, bundles::tensor(ctx, Fd, Fd));
    check_profile(ff, {0, 0, 0, 0, 1});

    // h^3(F^v (x) Omega) = 1 and  h^1(Omega) = 2
    auto om = bundles::cotangent(ctx);
    auto fo = koszul::profile_of(ctx, bundles::tensor(ctx, Fd, om));
    check_profile(fo, {0, 0, 0, 1});
    auto oP = koszul::profile_of(ctx, om);
    check_profile(oP, {0, 2});

    // h^0(T_X) = 23
    auto tP = koszul::profile_of(ctx, bundles::tangent(ctx));
    check_profile(tP, {23});

    // h^2(Wedge^2 F^v (x) F) = 1; h^0(F^v (x) F) = 2; h^0(F) = 32
    auto w2f = koszul::profile_of(ctx, bundles::tensor(ctx, pb.wedge_F_dual(2), pb.F));
    check_profile(w2f, {0, 0, 1});
    auto fvf = koszul::profile_of(ctx, bundles::tensor(ctx, Fd, pb.F));
    check_profile(fvf, {2});
    auto f = koszul::profile_of(ctx, pb.F);
    check_profile(f, {32});
}

TEST_CASE("worked example: restrictions") {
    auto pb = problem216();
    Ctx& ctx = *pb.ctx;
    // h^3(F^v|_Y) = 1
    auto fv = koszul::restricted_cohomology(pb, bundles::dual(ctx, pb.F));
    check_profile(fv, {0, 0, 0, 1});
    // h^1(Omega_X|_Y) = 2, h^2(Omega_X|_Y) = 1
    auto om = koszul::restricted_cohomology(pb, bundles::cotangent(ctx));
    check_profile(om, {0, 2, 1});
}

TEST_CASE("worked example: Hodge numbers and tangent cohomology") {
    auto pb = problem216();
    auto tab = koszul::hodge_numbers(pb);
    REQUIRE(tab.d == 3);
    CHECK(tab.pinched());
    CHECK(tab.h[0][0].lb == 1);
    CHECK(tab.h[1][1].lb == 2);
    CHECK(tab.h[1][2].lb == 2);
    CHECK(tab.h[2][1].lb == 2);
    CHECK(tab.h[1][0].lb == 0);
    CHECK(tab.h[1][3].lb == 0);
    CHECK(tab.h[3][3].lb == 1);

    auto rep = koszul::tangent_cohomology(pb);
    REQUIRE(rep.differenceExact);
    CHECK(rep.h0T == 24);
    CHECK(rep.h0F == 31);
    CHECK(rep.difference == 7);
}

TEST_CASE("worked example: h0 of the anticanonical bundle") {
    auto pb = problem216();
    CHECK(koszul::h0_anticanonical(pb) == 14);
}

TEST_CASE("hyperplane in P^4 is P^3") {
    auto ctx = std::make_shared<Ctx>(Space{{Factor::projective(4)}});
    auto pb = koszul::make_problem(ctx, Expr::line({1}), true);
    CHECK(koszul::h0_anticanonical(pb) == 35);
    auto tab = koszul::hodge_numbers(pb);
    CHECK(tab.pinched());
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) CHECK(tab.h[p][q].lb == (p == q ? 1 : 0));
}

TEST_CASE("quartic surface in P^3") {
    auto ctx = std::make_shared<Ctx>(Space{{Factor::projective(3)}});
    auto pb = koszul::make_problem(ctx, Expr::line({4}), /*fano=*/false);
    auto tab = koszul::hodge_numbers(pb);
    REQUIRE(tab.d == 2);
    CHECK(tab.pinched());
    CHECK(tab.h[0][0].lb == 1);
    CHECK(tab.h[2][0].lb == 1);
    CHECK(tab.h[0][2].lb == 1);
    CHECK(tab.h[1][1].lb == 20);
    CHECK(tab.h[1][0].lb == 0);
}

TEST_CASE("rank-0 problem reproduces the ambient Hodge numbers") {
    auto ctx = std::make_shared<Ctx>(Space{{Factor::projective(1), Factor::projective(1)}});
    auto pb = koszul::make_problem(ctx, Expr::zero(), true);
    auto tab = koszul::hodge_numbers(pb);
    CHECK(tab.pinched());
    CHECK(tab.h[0][0].lb == 1);
    CHECK(tab.h[1][1].lb == 2);
    CHECK(tab.h[2][2].lb == 1);
    CHECK(tab.h[1][0].lb == 0);
}

TEST_CASE("quintic del Pezzo: chi(-K) = K^2 + 1") {
    auto ctx = std::make_shared<Ctx>(Space{{Factor::grassmannian(2, 5)}});
    ExprPtr F = Expr::sum(Expr::sum(Expr::line({1}), Expr::line({1})),
                          Expr::sum(Expr::line({1}), Expr::line({1})));
    auto pb = koszul::make_problem(ctx, F, true);
    CHECK(koszul::h0_anticanonical(pb) == 6);
}
