#include "doctest.h"

#include <set>
#include <vector>

#include "commidx/orders.hpp"

using namespace commidx;

namespace {

IntMat mat(std::size_t r, std::size_t c, std::vector<long> e) {
    std::vector<Int> v(e.begin(), e.end());
    return IntMat(r, c, std::move(v));
}

std::vector<Int> vec(std::vector<long> e) { return std::vector<Int>(e.begin(), e.end()); }

IntMat flatten(const std::vector<IntMat>& ms) {
    if (ms.empty()) return IntMat(0, 0);
    std::size_t dim = ms[0].rows() * ms[0].cols();
    IntMat out(dim, ms.size());
    for (std::size_t j = 0; j < ms.size(); ++j)
        for (std::size_t u = 0; u < ms[j].rows(); ++u)
            for (std::size_t v = 0; v < ms[j].cols(); ++v)
                out(u * ms[j].cols() + v, j) = ms[j](u, v);
    return out;
}

IntMat random_commutant_unit(const CommutantLattice& e, Rng& rng) {
    for (int t = 0; t < 1000; ++t) {
        IntMat alpha(e.mat_dim, e.mat_dim);
        for (const auto& b : e.qbasis) {
            long c = rng.pick(-3, 3);
            if (c != 0) alpha = alpha + Int(c) * b;
        }
        if (det(alpha) != 0) return alpha;
    }
    throw std::runtime_error("no unit found");
}

FiniteModule trivial_order_module(const FgAbGroup& g) {
    return FiniteModule(group_ring(trivial_group()), g,
                        {IntMat::identity(g.ngens())});
}

} // namespace

TEST_CASE("FiniteGroup: construction and validation") {
    FiniteGroup s3 = symmetric_group(3);
    CHECK(s3.order() == 6);
    bool abelian = true;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) abelian = abelian && s3.mul(i, j) == s3.mul(j, i);
    CHECK(!abelian);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(s3.mul(i, s3.inverse(i)) == s3.identity());

    CHECK(cyclic_group(4).mul(3, 2) == 1);
    CHECK(trivial_group().order() == 1);
    // 0·0 = 1 on two elements: no identity
    CHECK_THROWS_AS(FiniteGroup(2, {1, 1, 1, 1}), BadDefinition);
}

TEST_CASE("group_ring: trivial, C2, S3") {
    CHECK(group_ring(trivial_group()).zrank() == 1);

    ZOrder zc2 = group_ring(cyclic_group(2));
    CHECK(zc2.zrank() == 2);
    CHECK(zc2.product(vec({0, 1}), vec({0, 1})) == vec({1, 0})); // σ² = 1
    CHECK(zc2.unity() == vec({1, 0}));

    CHECK(group_ring(symmetric_group(3)).zrank() == 6); // ctor checks associativity
}

TEST_CASE("upper_triangular_order: structure") {
    CHECK(upper_triangular_order(1).zrank() == 1);

    ZOrder ut = upper_triangular_order(2); // basis e11, e12, e22
    CHECK(ut.zrank() == 3);
    CHECK(ut.product(vec({1, 0, 0}), vec({0, 1, 0})) == vec({0, 1, 0})); // e11·e12 = e12
    CHECK(ut.product(vec({0, 1, 0}), vec({0, 0, 1})) == vec({0, 1, 0})); // e12·e22 = e12
    CHECK(ut.product(vec({0, 1, 0}), vec({0, 1, 0})) == vec({0, 0, 0})); // e12² = 0
    CHECK(ut.unity() == vec({1, 0, 1}));

    // deliberately broken structure constants: e0·e0 = e1, e0·e1 = 0, unity impossible
    CHECK_THROWS_AS(ZOrder(1, {Int(2)}, {Int(1)}), BadDefinition);
}

TEST_CASE("is_semisimple: group rings pass, upper-triangular fails") {
    CHECK(is_semisimple(group_ring(trivial_group())));
    CHECK(is_semisimple(group_ring(cyclic_group(2))));
    CHECK(is_semisimple(group_ring(cyclic_group(3))));
    CHECK(is_semisimple(group_ring(symmetric_group(3))));
    CHECK(!is_semisimple(upper_triangular_order(2)));
    CHECK(!is_semisimple(upper_triangular_order(3)));
}

TEST_CASE("end_lattice: ranks, right multiplications, saturation") {
    SUBCASE("trivial order: E ≅ Z") {
        CommutantLattice e = end_lattice(regular_lattice(group_ring(trivial_group())));
        CHECK(e.ambient_dim() == 1);
    }
    SUBCASE("regular lattices: E_L is exactly the right-multiplication lattice") {
        for (const ZOrder& r : {group_ring(cyclic_group(2)), group_ring(symmetric_group(3)),
                                upper_triangular_order(2)}) {
            CommutantLattice e = end_lattice(regular_lattice(r));
            CHECK(e.ambient_dim() == r.zrank());
            std::vector<IntMat> rm(r.zrank());
            for (std::size_t i = 0; i < r.zrank(); ++i) {
                std::vector<Int> x(r.zrank(), Int(0));
                x[i] = 1;
                rm[i] = right_mult_matrix(r, x);
            }
            CHECK(col_basis(flatten(e.qbasis)) == col_basis(flatten(rm)));
        }
    }
    SUBCASE("S3 permutation lattice: E of rank 2, saturated") {
        CommutantLattice e = end_lattice(permutation_lattice(symmetric_group(3)));
        CHECK(e.ambient_dim() == 2);
        for (const Int& d : snf(flatten(e.qbasis)).d) CHECK(d == 1); // saturation
        CHECK(e.coords == IntMat::identity(2));
    }
}

TEST_CASE("commensurable: rational isomorphism criterion") {
    ZOrder zc2 = group_ring(cyclic_group(2));
    OrderLattice reg = regular_lattice(zc2);
    OrderLattice triv = one_dim_lattice(zc2, vec({1, 1}));
    OrderLattice sign = one_dim_lattice(zc2, vec({1, -1}));

    CHECK(commensurable(reg, reg));
    CHECK(commensurable(reg, direct_sum(triv, sign)));
    CHECK(!commensurable(triv, sign));
    CHECK(!commensurable(reg, triv));

    OrderLattice ut = regular_lattice(upper_triangular_order(2));
    CHECK_THROWS_AS(commensurable(ut, ut), OrderNotSemisimple);
    CHECK_THROWS_AS(commensurable(reg, regular_lattice(group_ring(cyclic_group(3)))),
                    ObjectMismatch);
}

TEST_CASE("ie_self: identity, central scaling, upper-triangular values") {
    ZOrder ut = upper_triangular_order(2);
    OrderLattice l = regular_lattice(ut);

    CHECK(ie_self(l, to_rat(IntMat::identity(3))) == 1);
    CHECK(ie_self(l, to_rat(Int(3) * IntMat::identity(3))) == 1);

    // right multiplication by diag(a, c) = a·e11 + c·e22
    auto diag_rm = [&](long a, long c) { return to_rat(right_mult_matrix(ut, vec({a, 0, c}))); };
    CHECK(ie_self(l, diag_rm(1, 2)) == 2);
    CHECK(ie_self(l, diag_rm(1, 3)) == 3);
    CHECK(ie_self(l, diag_rm(1, 5)) == 5);
    CHECK(ie_self(l, diag_rm(-1, 2)) == 2);
    CHECK(ie_self(l, diag_rm(2, -3)) == Rat(3, 2));
    CHECK(ie_self(l, diag_rm(2, 4)) == 2);
    CHECK(ie_self(l, diag_rm(5, 1)) == Rat(1, 5));
    CHECK(ie_self(l, diag_rm(-3, -3)) == 1);

    CHECK_THROWS_AS(ie_self(l, diag_rm(0, 1)), SingularMatrix);
    // left multiplication by e11 + 2·e22 is invertible but not central
    CHECK_THROWS_AS(ie_self(l, to_rat(ut.left_regular(0) + Int(2) * ut.left_regular(2))),
                    NotInCommutant);

    // ie_self agrees with the φ-form on random commutant units
    Rng rng(21);
    CommutantLattice e = end_lattice(l);
    for (int t = 0; t < 25; ++t) {
        RatMat alpha = to_rat(random_commutant_unit(e, rng));
        CHECK(ie_self(l, alpha) == ie_via_phi(l, l, alpha));
    }
}

TEST_CASE("ie_pair: idempotent-coordinates example and reciprocity") {
    ZOrder zc2 = group_ring(cyclic_group(2));
    OrderLattice reg = regular_lattice(zc2);
    OrderLattice split = direct_sum(one_dim_lattice(zc2, vec({1, 1})),
                                    one_dim_lattice(zc2, vec({1, -1})));

    CHECK(ie_pair(reg, reg) == 1);
    CHECK(ie_pair(reg, split) == 2);
    CHECK(ie_pair(split, reg) == Rat(1, 2));
    CHECK(ie_pair(reg, split, 0) == ie_pair(reg, split, 1)); // φ-independence
    CHECK(ie_pair(reg, split) * ie_pair(split, reg) == 1);

    CHECK_THROWS_AS(ie_pair(one_dim_lattice(zc2, vec({1, 1})),
                            one_dim_lattice(zc2, vec({1, -1}))),
                    NotCommensurable);
    OrderLattice ut = regular_lattice(upper_triangular_order(2));
    CHECK_THROWS_AS(ie_pair(ut, ut), OrderNotSemisimple);

    // sublattice pairs over Z[S3]
    OrderLattice perm = permutation_lattice(symmetric_group(3));
    Rng rng(22);
    CommutantLattice e = end_lattice(perm);
    for (int t = 0; t < 5; ++t) {
        OrderLattice sub = sublattice(perm, random_commutant_unit(e, rng));
        CHECK(commensurable(perm, sub));
        CHECK(ie_pair(perm, sub, 0) == ie_pair(perm, sub, 1));
        CHECK(ie_pair(perm, sub) * ie_pair(sub, perm) == 1);
    }
}

TEST_CASE("sample_self_commensurability: determinism and certified index") {
    OrderLattice reg = regular_lattice(group_ring(cyclic_group(3)));

    SampledCommensurability a = sample_self_commensurability(reg, Int(7));
    SampledCommensurability b = sample_self_commensurability(reg, Int(7));
    CHECK(a.alpha == b.alpha);
    CHECK(a.corr.left.mat() == b.corr.left.mat());
    CHECK(a.corr.right.mat() == b.corr.right.mat());

    // α is integral, so the apex is L itself and the left leg is the identity
    CHECK(a.corr.apex == reg);
    CHECK(a.corr.left.mat() == IntMat::identity(3));
    CHECK(certify(a.corr).index() == abs(det(a.alpha)));

    std::set<IntMat> alphas;
    for (long s = 0; s < 20; ++s)
        alphas.insert(sample_self_commensurability(reg, Int(s)).alpha);
    CHECK(alphas.size() > 10);
}

TEST_CASE("well-definedness: sampled self-commensurabilities have ie = 1") {
    std::vector<OrderLattice> lattices = {
        permutation_lattice(cyclic_group(2)),  regular_lattice(group_ring(cyclic_group(2))),
        permutation_lattice(cyclic_group(3)),  regular_lattice(group_ring(cyclic_group(3))),
        permutation_lattice(symmetric_group(3)),
        regular_lattice(group_ring(symmetric_group(3)))};
    for (const auto& l : lattices)
        for (long s = 1; s <= 10; ++s) {
            SampledCommensurability c = sample_self_commensurability(l, Int(s));
            CHECK(ie_self(l, to_rat(c.alpha)) == 1);
        }
}

TEST_CASE("lattice correspondences: composition, inverse law, multiplicativity") {
    using Ctx = LatticeCtx;
    OrderLattice reg = regular_lattice(group_ring(cyclic_group(2)));

    SUBCASE("composition of sampled commensurabilities multiplies indices") {
        for (long s = 1; s <= 10; ++s) {
            auto c = certify(sample_self_commensurability(reg, Int(s)).corr);
            auto d = certify(sample_self_commensurability(reg, Int(100 + s)).corr);
            CHECK(compose_corr(c, d).index() == c.index() * d.index());
        }
    }
    SUBCASE("inverse law with the diagonal witness") {
        auto c = sample_self_commensurability(reg, Int(3)).corr;
        auto cc = compose_corr(c, inverse(c));
        CHECK(verify_equivalence(cc, identity_corr<Ctx>(reg), inverse_law_witness<Ctx>(c)));
        CHECK(certify(cc).index() == 1);
    }
    SUBCASE("non-isogeny legs are rejected") {
        OrderLattice triv = one_dim_lattice(group_ring(cyclic_group(2)), vec({1, 1}));
        LatHom zero(triv, triv, mat(1, 1, {0}));
        CHECK_THROWS_AS(certify(Correspondence<Ctx>(triv, LatHom::identity(triv), zero)),
                        NotIsogeny);
    }
}

TEST_CASE("ie multiplicativity over 50 random chains") {
    Rng rng(23);
    OrderLattice ut = regular_lattice(upper_triangular_order(2));
    CommutantLattice e_ut = end_lattice(ut);
    OrderLattice reg = regular_lattice(group_ring(cyclic_group(2)));
    CommutantLattice e_reg = end_lattice(reg);
    int nontrivial = 0;
    for (int t = 0; t < 50; ++t) {
        IntMat a = random_commutant_unit(e_ut, rng);
        IntMat b = random_commutant_unit(e_ut, rng);
        Rat lhs = ie_via_phi(ut, ut, to_rat(b * a));
        Rat rhs = ie_via_phi(ut, ut, to_rat(a)) * ie_via_phi(ut, ut, to_rat(b));
        CHECK(lhs == rhs);
        if (lhs != 1) ++nontrivial;

        IntMat c = random_commutant_unit(e_reg, rng);
        IntMat d = random_commutant_unit(e_reg, rng);
        CHECK(ie_via_phi(reg, reg, to_rat(d * c)) == 1); // semisimple: all values 1
    }
    CHECK(nontrivial > 10); // the law is being tested on genuinely nontrivial values
}

TEST_CASE("lemma_p_check") {
    CHECK(lemma_p_check(permutation_lattice(cyclic_group(3)), Int(2)));
    CHECK(lemma_p_check(regular_lattice(group_ring(symmetric_group(3))), Int(3)));
    CHECK(lemma_p_check(regular_lattice(group_ring(cyclic_group(2))), Int(1)));
    CHECK_THROWS_AS(lemma_p_check(permutation_lattice(cyclic_group(2)), Int(0)), BadDefinition);
}

TEST_CASE("FiniteModule: validation, torsion_submodule, split rejection") {
    ZOrder zc2 = group_ring(cyclic_group(2));
    FgAbGroup g33(0, {Int(3), Int(3)});

    FiniteModule swap33(zc2, g33, {IntMat::identity(2), mat(2, 2, {0, 1, 1, 0})});
    CHECK(swap33.grp().order() == 9);
    // σ of order 2 forced: action matrix must square to the identity
    CHECK_THROWS_AS(FiniteModule(zc2, g33, {IntMat::identity(2), mat(2, 2, {1, 1, 0, 1})}),
                    BadDefinition);

    // Z ⊕ Z/2 with trivial C2 action: torsion part Z/2
    FgAbGroup mixed(1, {Int(2)});
    MixedModule mm = mixed_module(zc2, mixed, {IntMat::identity(2), IntMat::identity(2)});
    CHECK(torsion_submodule(mm).grp() == FgAbGroup(0, {Int(2)}));
    CHECK(mm.free_part.zrank() == 1);

    // σ(x) = t + x mixes free into torsion: not a split presentation
    CHECK_THROWS_AS(mixed_module(zc2, mixed, {IntMat::identity(2), mat(2, 2, {1, 1, 0, 1})}),
                    BadDefinition);

    CHECK(torsion_submodule(permutation_lattice(cyclic_group(2))).grp().is_trivial());
    CHECK(torsion_submodule(swap33) == swap33);
}

TEST_CASE("aut_enumerate: counts") {
    CHECK(aut_enumerate(trivial_order_module(FgAbGroup(0, {Int(2)}))).size() == 1);
    CHECK(aut_enumerate(trivial_order_module(FgAbGroup(0, {Int(2), Int(2)}))).size() == 6);
    CHECK(aut_enumerate(trivial_order_module(FgAbGroup(0, {Int(4)}))).size() == 2);

    ZOrder zc2 = group_ring(cyclic_group(2));
    FgAbGroup g33(0, {Int(3), Int(3)});
    FiniteModule swap33(zc2, g33, {IntMat::identity(2), mat(2, 2, {0, 1, 1, 0})});
    // independent brute force over all 2×2 matrices mod 3: commute with the
    // swap and have unit determinant
    int brute = 0;
    for (long a = 0; a < 3; ++a)
        for (long b = 0; b < 3; ++b)
            for (long c = 0; c < 3; ++c)
                for (long d = 0; d < 3; ++d) {
                    long f[2][2] = {{a, b}, {c, d}};
                    long s[2][2] = {{0, 1}, {1, 0}};
                    bool comm = true;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            long fs = 0, sf = 0;
                            for (int k = 0; k < 2; ++k) {
                                fs += f[i][k] * s[k][j];
                                sf += s[i][k] * f[k][j];
                            }
                            if ((fs - sf) % 3 != 0) comm = false;
                        }
                    if (comm && (a * d - b * c) % 3 != 0) ++brute;
                }
    CHECK(brute == 4);
    CHECK(aut_enumerate(swap33).size() == 4);

    CHECK_THROWS_AS(aut_enumerate(trivial_order_module(FgAbGroup(0, {Int(8), Int(8)})), Int(16)),
                    CapExceeded);
}

TEST_CASE("ia_finite: worked values and agreement with the abelian closed form") {
    FiniteModule z2 = trivial_order_module(FgAbGroup(0, {Int(2)}));
    FiniteModule z4 = trivial_order_module(FgAbGroup(0, {Int(4)}));
    CHECK(ia_finite(z2, z2) == 1);
    CHECK(ia_finite(z2, z4) == 2);

    std::vector<FgAbGroup> groups;
    for (long a = 1; a <= 16; ++a) {
        if (a > 1) groups.emplace_back(0, std::vector<Int>{Int(a)});
        for (long b = 2; a * b <= 16; ++b)
            if (b % a == 0 && a > 1) groups.emplace_back(0, std::vector<Int>{Int(a), Int(b)});
    }
    groups.emplace_back(0, std::vector<Int>{});
    for (const auto& l : groups)
        for (const auto& m : groups) {
            CHECK(ia_finite(trivial_order_module(l), trivial_order_module(m)) ==
                  ia_abelian(l, m));
        }
}

TEST_CASE("submodule_from_generators: closure under the action") {
    ZOrder zc2 = group_ring(cyclic_group(2));
    FgAbGroup g33(0, {Int(3), Int(3)});
    FiniteModule swap33(zc2, g33, {IntMat::identity(2), mat(2, 2, {0, 1, 1, 0})});

    Submodule whole = submodule_from_generators(swap33, mat(2, 1, {1, 0}));
    CHECK(whole.mod.grp().order() == 9); // (1,0) and its swap generate everything

    Submodule diag = submodule_from_generators(swap33, mat(2, 1, {1, 1}));
    CHECK(diag.mod.grp().order() == 3);
}

TEST_CASE("stabilizer_data: worked examples and agreement with ia_finite") {
    SUBCASE("L = M") {
        FiniteModule z4 = trivial_order_module(FgAbGroup(0, {Int(4)}));
        StabilizerDecomposition s = stabilizer_data(z4, IntMat::identity(1));
        CHECK(s.h_index == 1);
        CHECK(s.ker_rho_order == 1);
        CHECK(s.rho_image_index == 1);
        CHECK(s.value() == 1);
    }
    SUBCASE("Z/2 ⊆ Z/4") {
        FiniteModule z4 = trivial_order_module(FgAbGroup(0, {Int(4)}));
        StabilizerDecomposition s = stabilizer_data(z4, mat(1, 1, {2}));
        CHECK(s.aut_m_order == 2);
        CHECK(s.h_index == 1);
        CHECK(s.ker_rho_order == 2);
        CHECK(s.rho_image_index == 1);
        CHECK(s.value() == 2);
    }
    SUBCASE("C2-action: stable submodules of the swap module") {
        ZOrder zc2 = group_ring(cyclic_group(2));
        FgAbGroup g33(0, {Int(3), Int(3)});
        FiniteModule swap33(zc2, g33, {IntMat::identity(2), mat(2, 2, {0, 1, 1, 0})});

        StabilizerDecomposition s = stabilizer_data(swap33, mat(2, 1, {1, 1}));
        Submodule diag = submodule_from_generators(swap33, mat(2, 1, {1, 1}));
        CHECK(s.value() == ia_finite(diag.mod, swap33));

        CHECK_THROWS_AS(stabilizer_data(swap33, mat(2, 1, {1, 0})), NotSubmodule);
    }
}

TEST_CASE("FinModHom: intertwining validation") {
    ZOrder zc2 = group_ring(cyclic_group(2));
    FgAbGroup z3(0, {Int(3)});
    FiniteModule neg(zc2, z3, {IntMat::identity(1), mat(1, 1, {-1})});
    FiniteModule triv(zc2, z3, {IntMat::identity(1), IntMat::identity(1)});

    CHECK_NOTHROW(FinModHom(neg, neg, mat(1, 1, {2})));
    CHECK_THROWS_AS(FinModHom(neg, triv, mat(1, 1, {1})), BadDefinition);
    CHECK_NOTHROW(FinModHom(neg, triv, mat(1, 1, {0})));
}
