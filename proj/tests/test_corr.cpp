#include "doctest.h"

#include <set>
#include <vector>

#include "commidx/corr.hpp"
#include "commidx/rng.hpp"

using namespace commidx;
using Ctx = AbGroupContext;
using Corr = Correspondence<Ctx>;
using Comm = Commensurability<Ctx>;
using Witness = EquivalenceWitness<Ctx>;

namespace {

FgAbGroup grp(std::size_t rank, std::vector<long> tors) {
    std::vector<Int> t(tors.begin(), tors.end());
    return FgAbGroup(rank, std::move(t));
}

IntMat mat(std::size_t r, std::size_t c, std::vector<long> e) {
    std::vector<Int> v(e.begin(), e.end());
    return IntMat(r, c, std::move(v));
}

AbHom scalar_hom(const FgAbGroup& g, long s) {
    return AbHom(g, g, Int(s) * IntMat::identity(g.ngens()));
}

FgAbGroup random_finite(Rng& rng, long max_order) {
    std::vector<Int> tors;
    Int prod = 1;
    std::size_t k = static_cast<std::size_t>(rng.pick(0, 2));
    for (std::size_t i = 0; i < k; ++i) {
        Int d = (i == 0) ? Int(rng.pick(2, 8)) : tors.back() * Int(rng.pick(1, 3));
        if (prod * d > max_order) break;
        tors.push_back(d);
        prod *= d;
    }
    return FgAbGroup(0, tors);
}

// Any hom between finite groups is an isogeny.
AbHom random_hom(Rng& rng, const FgAbGroup& a, const FgAbGroup& b) {
    IntMat m(b.ngens(), a.ngens());
    for (std::size_t j = 0; j < a.ngens(); ++j) {
        Int dj = a.gen_order(j);
        for (std::size_t i = 0; i < b.ngens(); ++i) {
            Int di = b.gen_order(i);
            Int g = gcd(di, dj);
            m(i, j) = (di / g) * Int(rng.pick(0, 100) % g);
        }
    }
    return AbHom(a, b, m);
}

// Count kernel elements of h by direct evaluation.
Int kernel_count(const AbHom& h) {
    Int n = 0;
    for (const auto& x : elements(h.src(), Int(1) << 20)) {
        IntMat v(h.src().ngens(), 1);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, 0) = x[i];
        if (reduce_mat(h.dst(), h.mat() * v).is_zero()) ++n;
    }
    return n;
}

} // namespace

TEST_CASE("from_isogeny: identity, free multiplication, torsion multiplication") {
    FgAbGroup z = grp(1, {});
    FgAbGroup z4 = grp(0, {4});

    CHECK(from_isogeny<Ctx>(AbHom::identity(z)).index() == 1);
    CHECK(from_isogeny<Ctx>(scalar_hom(z, 3)).index() == 3);
    CHECK(from_isogeny<Ctx>(scalar_hom(z4, 2)).index() == 1);
    CHECK_THROWS_AS(from_isogeny<Ctx>(AbHom(z, z, mat(1, 1, {0}))), NotIsogeny);
}

TEST_CASE("index: i(g)/i(f)") {
    FgAbGroup z = grp(1, {});
    FgAbGroup z4 = grp(0, {4});

    CHECK(certify(Corr(z, scalar_hom(z, 2), scalar_hom(z, 3))).index() == Rat(3, 2));
    CHECK(certify(identity_corr<Ctx>(grp(0, {6}))).index() == 1);
    CHECK(certify(Corr(z4, scalar_hom(z4, 2), AbHom::identity(z4))).index() == 1);
}

TEST_CASE("compose: worked examples") {
    FgAbGroup z = grp(1, {});
    Corr c(z, AbHom::identity(z), scalar_hom(z, 2));
    Corr d(z, AbHom::identity(z), scalar_hom(z, 3));

    Corr cd = compose_corr(c, d);
    CHECK(cd.apex == z); // {(x,y): 2x=y} ≅ Z
    CHECK(certify(cd).index() == 6);
    // Legs on the canonical generator: x-coordinate ±1, right leg ±6.
    CHECK(cd.left.mat()(0, 0) * cd.right.mat()(0, 0) == 6);

    FgAbGroup z6 = grp(0, {6});
    Corr idc = identity_corr<Ctx>(z6);
    Corr sq = compose_corr(idc, idc);
    CHECK(sq.apex == z6);
    CHECK(certify(sq).index() == 1);

    CHECK_THROWS_AS(compose_corr(c, identity_corr<Ctx>(z6)), ObjectMismatch);
}

TEST_CASE("inverse: swapped legs, reciprocal index") {
    FgAbGroup z = grp(1, {});
    Comm c = from_isogeny<Ctx>(scalar_hom(z, 2));

    Comm ci = inverse(c);
    CHECK(ci.base.left == scalar_hom(z, 2));
    CHECK(ci.base.right == AbHom::identity(z));
    CHECK(ci.index() == Rat(1, 2));
    CHECK(inverse(ci).base.left == c.base.left);
    CHECK(inverse(ci).base.right == c.base.right);

    CHECK(compose_corr(c, inverse(c)).index() == 1);
}

TEST_CASE("verify_equivalence: witness checks") {
    FgAbGroup z = grp(1, {});
    Corr c(z, AbHom::identity(z), scalar_hom(z, 2));

    SUBCASE("reflexivity witness (X, id, id)") {
        Witness w{z, AbHom::identity(z), AbHom::identity(z)};
        CHECK(verify_equivalence(c, c, w));
    }
    SUBCASE("rescaled apex: (Z,id,×2) ≃ (Z,×2,×4) via (Z,×2,id)") {
        Corr d(z, scalar_hom(z, 2), scalar_hom(z, 4));
        Witness w{z, scalar_hom(z, 2), AbHom::identity(z)};
        CHECK(verify_equivalence(c, d, w));
        CHECK(certify(c).index() == certify(d).index());
        // wrong witness: squares fail
        Witness bad{z, AbHom::identity(z), AbHom::identity(z)};
        CHECK(!verify_equivalence(c, d, bad));
    }
    SUBCASE("witness with a non-isogeny leg is rejected") {
        Witness w{z, AbHom(z, z, mat(1, 1, {0})), AbHom(z, z, mat(1, 1, {0}))};
        CHECK(!verify_equivalence(c, c, w));
    }
    SUBCASE("mismatched endpoints throw") {
        Corr d = identity_corr<Ctx>(grp(0, {6}));
        Witness w{z, AbHom::identity(z), AbHom::identity(z)};
        CHECK_THROWS_AS(verify_equivalence(c, d, w), EndpointMismatch);
    }
}

TEST_CASE("fibre_product: worked examples") {
    FgAbGroup z = grp(1, {});
    FgAbGroup z2 = grp(0, {2});
    FgAbGroup z4 = grp(0, {4});
    AbHom red_z_z2(z, z2, mat(1, 1, {1}));

    SUBCASE("Z ×_{Z/2} Z = {(a,b): a≡b mod 2}, index 2 in Z²") {
        auto pb = Ctx::fibre_product(red_z_z2, red_z_z2);
        CHECK(pb.apex == grp(2, {}));
        CHECK(lattice_index(IntMat::identity(2), pb.t) == 2);
        // diagonal and (2,0) generate: check both project correctly
        CHECK(Ctx::compose(red_z_z2, pb.p0) == Ctx::compose(red_z_z2, pb.p1));
    }
    SUBCASE("h = id makes p0 an isomorphism") {
        auto pb = Ctx::fibre_product(red_z_z2, AbHom::identity(z2));
        auto cert = hom_certify(pb.p0);
        CHECK(cert.ker_order == 1);
        CHECK(cert.coker_order == 1);
    }
    SUBCASE("Z/4 → Z/2 ← Z/2 has fibre product of order 4") {
        AbHom red(z4, z2, mat(1, 1, {1}));
        auto pb = Ctx::fibre_product(red, AbHom::identity(z2));
        CHECK(pb.apex.order() == 4);
    }
}

TEST_CASE("fibre_product: kernel facts #ker p0 = #ker h, #ker p1 = #ker f") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        FgAbGroup x = random_finite(rng, 36);
        FgAbGroup y = random_finite(rng, 36);
        FgAbGroup m = random_finite(rng, 36);
        AbHom f = random_hom(rng, x, m);
        AbHom h = random_hom(rng, y, m);
        auto pb = Ctx::fibre_product(f, h);
        CHECK(kernel_count(pb.p0) == kernel_count(h));
        CHECK(kernel_count(pb.p1) == kernel_count(f));
        CHECK(Ctx::compose(f, pb.p0) == Ctx::compose(h, pb.p1));
    }
}

TEST_CASE("mediate: universal property on random cones") {
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        FgAbGroup x = random_finite(rng, 30);
        FgAbGroup y = random_finite(rng, 30);
        FgAbGroup m = random_finite(rng, 30);
        FgAbGroup src = random_finite(rng, 30);
        AbHom f = random_hom(rng, x, m);
        AbHom h = random_hom(rng, y, m);
        auto pb = Ctx::fibre_product(f, h);
        // cone through the pullback: compose projections with a random map
        AbHom w0 = random_hom(rng, src, pb.apex);
        AbHom u = Ctx::compose(pb.p0, w0);
        AbHom v = Ctx::compose(pb.p1, w0);
        AbHom w = Ctx::mediate(pb, u, v);
        CHECK(Ctx::compose(pb.p0, w) == u);
        CHECK(Ctx::compose(pb.p1, w) == v);
    }
}

TEST_CASE("inverse law: c∘c⁻¹ ≃ identity with the diagonal witness") {
    Rng rng(13);
    int done = 0;
    while (done < 60) {
        FgAbGroup l = random_finite(rng, 24);
        FgAbGroup m = random_finite(rng, 24);
        FgAbGroup w = random_finite(rng, 24);
        Corr c(w, random_hom(rng, w, l), random_hom(rng, w, m));
        Corr cc = compose_corr(c, inverse(c));
        Witness wit = inverse_law_witness<Ctx>(c);
        CHECK(verify_equivalence(cc, identity_corr<Ctx>(l), wit));
        CHECK(certify(cc).index() == 1);
        ++done;
    }
    // a mixed-rank instance: t ↦ t, x ↦ t + 3x on Z/2 ⊕ Z
    FgAbGroup z = grp(1, {2});
    Corr c(z, AbHom::identity(z), AbHom(z, z, mat(2, 2, {1, 1, 0, 3})));
    Corr cc = compose_corr(c, inverse(c));
    CHECK(verify_equivalence(cc, identity_corr<Ctx>(z), inverse_law_witness<Ctx>(c)));
    CHECK(certify(cc).index() == 1);
}

TEST_CASE("index multiplicativity over 500 composable pairs") {
    Rng rng(14);
    for (int t = 0; t < 500; ++t) {
        FgAbGroup l = random_finite(rng, 40);
        FgAbGroup m = random_finite(rng, 40);
        FgAbGroup n = random_finite(rng, 40);
        FgAbGroup w0 = random_finite(rng, 40);
        FgAbGroup w1 = random_finite(rng, 40);
        Comm c = certify(Corr(w0, random_hom(rng, w0, l), random_hom(rng, w0, m)));
        Comm d = certify(Corr(w1, random_hom(rng, w1, m), random_hom(rng, w1, n)));
        CHECK(compose_corr(c, d).index() == c.index() * d.index());
    }
}
