#include "doctest.h"

#include <memory>

#include "ctl/rep.hpp"
#include "oracles.hpp"

using namespace ctl;

namespace {

QuiverSpec a2() { return QuiverSpec{DynkinType(Family::A, 2)}; }
QuiverSpec a3() { return QuiverSpec{DynkinType(Family::A, 3)}; }
QuiverSpec d4() { return QuiverSpec{DynkinType(Family::D, 4)}; }

IntVec make_vec(std::initializer_list<int> xs) {
    IntVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (int x : xs) v(i++) = x;
    return v;
}

} // namespace

TEST_CASE("projectives and injectives by path counts") {
    QuiverSpec q = a2();
    CHECK(projective_rep(q, 0).dims == make_vec({1, 1}));
    CHECK(projective_rep(q, 0).arrow_maps[0](0, 0) == Rat(1));
    CHECK(projective_rep(q, 1).dims == make_vec({0, 1}));
    CHECK(injective_rep(q, 0).dims == make_vec({1, 0}));
    CHECK(injective_rep(q, 1).dims == make_vec({1, 1}));

    // A_3: I(3) has dims (1,1,1) and is isomorphic to P(1): the one-dimensional
    // Hom space is spanned by an invertible morphism.
    QuiverSpec q3 = a3();
    Representation i3 = injective_rep(q3, 2);
    Representation p1 = projective_rep(q3, 0);
    CHECK(i3.dims == make_vec({1, 1, 1}));
    auto maps = hom_basis(p1, i3);
    REQUIRE(maps.size() == 1);
    for (int v = 0; v < 3; ++v) CHECK(!maps[0].vertex_maps[static_cast<size_t>(v)](0, 0).is_zero());
}

TEST_CASE("hom dimensions on the stated examples") {
    QuiverSpec q = a2();
    CHECK(hom_dim(projective_rep(q, 1), projective_rep(q, 0)) == 1);
    CHECK(hom_dim(projective_rep(q, 0), projective_rep(q, 1)) == 0);
    QuiverSpec q3 = a3();
    CHECK(hom_dim(projective_rep(q3, 0), injective_rep(q3, 0)) == 1);
    CHECK(injective_rep(q3, 0).dims(0) == 1);
}

TEST_CASE("hom basis morphisms commute and have the right count") {
    for (DynkinType t : {DynkinType(Family::A, 3), DynkinType(Family::D, 4)}) {
        auto cat = RepCatalogue::get(QuiverSpec{t});
        for (int i = 0; i < cat->count(); i += 2)
            for (int j = 0; j < cat->count(); j += 3) {
                auto basis = hom_basis(cat->rep(i), cat->rep(j));
                for (const Morphism& f : basis) CHECK(f.is_commuting());
                CHECK(static_cast<int>(basis.size()) == hom_dim(cat->rep(i), cat->rep(j)));
            }
    }
}

TEST_CASE("dim Hom(P(a), M) = M_a") {
    for (DynkinType t : {DynkinType(Family::A, 4), DynkinType(Family::D, 4)}) {
        QuiverSpec q{t};
        auto cat = RepCatalogue::get(q);
        for (int a = 0; a < q.n(); ++a) {
            Representation pa = projective_rep(q, a);
            for (int i = 0; i < cat->count(); ++i)
                CHECK(hom_dim(pa, cat->rep(i)) == cat->rep(i).dims(a));
        }
    }
}

TEST_CASE("ext1 dimensions") {
    QuiverSpec q = a2();
    CHECK(dim_ext1(simple_rep(q, 0), simple_rep(q, 1)) == 1);
    QuiverSpec q3 = a3();
    CHECK(dim_ext1(simple_rep(q3, 0), simple_rep(q3, 2)) == 0);
    // Ext^1 out of projectives vanishes.
    auto cat = RepCatalogue::get(q3);
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < cat->count(); ++i)
            CHECK(dim_ext1(projective_rep(q3, a), cat->rep(i)) == 0);
}

TEST_CASE("reflection functors at a vertex") {
    QuiverSpec q = a2();
    Representation s2 = simple_rep(q, 1);
    Representation r = reflect_at_sink(s2, 1);
    CHECK(r.is_zero());

    Representation p1 = projective_rep(q, 0);
    Representation rp = reflect_at_sink(p1, 1);
    CHECK(rp.dims == make_vec({1, 0}));
    CHECK(rp.quiver.arrows()[0] == Arrow{1, 0});

    CHECK_THROWS_AS(reflect_at_sink(p1, 0), std::invalid_argument);
    CHECK_THROWS_AS(reflect_at_source(p1, 1), std::invalid_argument);
}

TEST_CASE("tau via reflection composites") {
    QuiverSpec q = a2();
    auto s1 = tau_minus(projective_rep(q, 1));
    REQUIRE(s1.has_value());
    CHECK(s1->dims == make_vec({1, 0}));

    CHECK(!tau_minus(injective_rep(q, 0)).has_value());
    CHECK(!tau_minus(injective_rep(q, 1)).has_value());
    CHECK(!tau_plus(projective_rep(q, 0)).has_value());

    Representation decomposable;
    decomposable.quiver = q;
    decomposable.dims = make_vec({2, 0});
    decomposable.arrow_maps = {rat_zeros(0, 2)};
    CHECK_THROWS_AS(tau_plus(decomposable), std::invalid_argument);

    // tau_minus . tau_plus = id on non-projectives, and the dimension vectors
    // track the Coxeter transform (both directions), across whole catalogues.
    for (DynkinType t : {DynkinType(Family::A, 4), DynkinType(Family::D, 5)}) {
        QuiverSpec qq{t};
        auto cat = RepCatalogue::get(qq);
        for (int i = 0; i < cat->count(); ++i) {
            const Representation& x = cat->rep(i);
            auto down = tau_minus(x);
            CHECK(down.has_value() == !cat->is_injective(i));
            if (down) {
                CHECK(down->dims == qq.coxeter_transform_inverse(x.dims));
                auto back = tau_plus(*down);
                REQUIRE(back.has_value());
                CHECK(back->dims == x.dims);
            }
        }
    }
}

TEST_CASE("catalogue enumerates one indecomposable per positive root") {
    CHECK(RepCatalogue::get(a2())->count() == 3);
    CHECK(RepCatalogue::get(a3())->count() == 6);
    CHECK(RepCatalogue::get(QuiverSpec{DynkinType(Family::E, 8)})->count() == 120);

    for (DynkinType t : {DynkinType(Family::A, 5), DynkinType(Family::D, 5)}) {
        QuiverSpec q{t};
        auto cat = RepCatalogue::get(q);
        auto roots = positive_roots(q);
        REQUIRE(cat->count() == static_cast<int>(roots.size()));
        for (int i = 0; i < cat->count(); ++i) {
            CHECK(cat->rep(i).dims == roots[static_cast<size_t>(i)]);
            CHECK(hom_dim(cat->rep(i), cat->rep(i)) == 1);
        }
    }
}

TEST_CASE("mesh-recursion Hom table equals linear-algebra Hom dimensions") {
    for (DynkinType t : {DynkinType(Family::A, 4), DynkinType(Family::D, 4), DynkinType(Family::D, 5)}) {
        auto cat = RepCatalogue::get(QuiverSpec{t});
        for (int i = 0; i < cat->count(); ++i)
            for (int j = 0; j < cat->count(); ++j)
                CHECK(cat->hom_table(i, j) == hom_dim(cat->rep(i), cat->rep(j)));
    }
}

TEST_CASE("hom minus ext equals the Euler form, exhaustively for small ranks") {
    for (DynkinType t : {DynkinType(Family::A, 4), DynkinType(Family::D, 4)}) {
        QuiverSpec q{t};
        auto cat = RepCatalogue::get(q);
        for (int i = 0; i < cat->count(); ++i)
            for (int j = 0; j < cat->count(); ++j) {
                long long lhs = hom_dim(cat->rep(i), cat->rep(j)) - dim_ext1(cat->rep(i), cat->rep(j));
                CHECK(lhs == q.euler_form(cat->rep(i).dims, cat->rep(j).dims));
            }
    }
}

TEST_CASE("minimal presentations are exact and minimal") {
    for (DynkinType t : {DynkinType(Family::A, 3), DynkinType(Family::D, 4)}) {
        auto cat = RepCatalogue::get(QuiverSpec{t});
        for (int i = 0; i < cat->count(); ++i) {
            ProjPresentation pres = minimal_presentation(cat->rep(i));
            CHECK(pres.incl.is_commuting());
            CHECK(pres.pi.is_commuting());
            CHECK(compose(pres.pi, pres.incl).is_zero());
            CHECK(pres.p0.total_dim() == cat->rep(i).total_dim() + pres.p1.total_dim());
        }
    }
}

TEST_CASE("ext1 spaces: dimension, pullback along identity, pushforward of zero") {
    for (DynkinType t : {DynkinType(Family::A, 3), DynkinType(Family::D, 4)}) {
        auto cat = RepCatalogue::get(QuiverSpec{t});
        for (int i = 0; i < cat->count(); ++i) {
            auto pres = std::make_shared<const ProjPresentation>(minimal_presentation(cat->rep(i)));
            for (int j = 0; j < cat->count(); ++j) {
                Ext1Space ext(pres, cat->rep(j));
                CHECK(ext.dim() == dim_ext1(cat->rep(i), cat->rep(j)));
                if (ext.dim() == 0) continue;

                RatMat pid = ext.pullback_matrix(identity_morphism(cat->rep(i)), ext);
                CHECK(pid == rat_identity(ext.dim()));

                RatMat pzero =
                    ext.pushforward_matrix(zero_morphism(cat->rep(j), cat->rep(j)), ext);
                CHECK(pzero == rat_zeros(ext.dim(), ext.dim()));
            }
        }
    }
}

TEST_CASE("catalogue cache round-trips bit-identically") {
    RepCatalogue::verify_cache_roundtrip(*RepCatalogue::get(a3()));
    RepCatalogue::verify_cache_roundtrip(*RepCatalogue::get(d4()));
}
