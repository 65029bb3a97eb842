#pragma once

#include <vector>

#include "commidx/corr.hpp"
#include "commidx/fgab.hpp"
#include "commidx/rng.hpp"

// Modules over Z-orders: group rings, endomorphism lattices, the two-sided
// lattice-index formula for endomorphism-level commensurability indices, and
// automorphism machinery for finite modules.

namespace commidx {

// Multiplication table on element indices; validated as a group law.
class FiniteGroup {
  public:
    FiniteGroup(std::size_t order, std::vector<std::size_t> table,
                std::vector<std::size_t> generators = {},
                std::vector<std::vector<std::size_t>> perms = {});

    std::size_t order() const { return order_; }
    std::size_t mul(std::size_t i, std::size_t j) const { return table_[i * order_ + j]; }
    std::size_t identity() const { return identity_; }
    std::size_t inverse(std::size_t i) const;
    const std::vector<std::size_t>& table() const { return table_; }
    const std::vector<std::size_t>& generators() const { return generators_; }
    // Optional permutation realization: perms()[g] is a permutation of
    // {0..degree-1}; empty when the group carries no permutation data.
    const std::vector<std::vector<std::size_t>>& perms() const { return perms_; }

    bool operator==(const FiniteGroup& o) const {
        return order_ == o.order_ && table_ == o.table_;
    }

  private:
    std::size_t order_;
    std::vector<std::size_t> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> generators_;
    std::vector<std::vector<std::size_t>> perms_;
};

FiniteGroup trivial_group();
FiniteGroup cyclic_group(std::size_t n);    // rotations of {0..n-1}
FiniteGroup symmetric_group(std::size_t n); // all permutations of {0..n-1}, n ≤ 5

// Associative unital ring structure on Z^n: e_i·e_j = Σ_k c_ijk e_k.
class ZOrder {
  public:
    ZOrder(std::size_t zrank, std::vector<Int> structure, std::vector<Int> unity);

    std::size_t zrank() const { return n_; }
    const Int& c(std::size_t i, std::size_t j, std::size_t k) const {
        return structure_[(i * n_ + j) * n_ + k];
    }
    const std::vector<Int>& structure() const { return structure_; }
    const std::vector<Int>& unity() const { return unity_; }
    // Matrix of left multiplication by e_i on the basis.
    IntMat left_regular(std::size_t i) const;
    std::vector<Int> product(const std::vector<Int>& x, const std::vector<Int>& y) const;

    bool operator==(const ZOrder& o) const {
        return n_ == o.n_ && structure_ == o.structure_ && unity_ == o.unity_;
    }

  private:
    std::size_t n_;
    std::vector<Int> structure_;
    std::vector<Int> unity_;
};

ZOrder group_ring(const FiniteGroup& g);
ZOrder upper_triangular_order(std::size_t n); // basis e_ij (i ≤ j), row-major

// True iff the rational algebra Q·R is semisimple (trace form nondegenerate).
bool is_semisimple(const ZOrder& r);

// Z^m with a ring homomorphism R → End(Z^m): one matrix per order basis element.
class OrderLattice {
  public:
    OrderLattice(ZOrder order, std::vector<IntMat> action);

    const ZOrder& order() const { return order_; }
    std::size_t zrank() const { return m_; }
    const std::vector<IntMat>& action() const { return action_; }
    // Action of a coordinate vector Σ x_i e_i.
    IntMat act(const std::vector<Int>& x) const;

    bool operator==(const OrderLattice& o) const {
        return order_ == o.order_ && action_ == o.action_;
    }

  private:
    ZOrder order_;
    std::size_t m_;
    std::vector<IntMat> action_;
};

OrderLattice regular_lattice(const ZOrder& r);
// Natural degree-d lattice from the group's permutation data.
OrderLattice permutation_lattice(const FiniteGroup& g);
// Rank-1 lattice on which e_i acts by the integer chi[i].
OrderLattice one_dim_lattice(const ZOrder& r, const std::vector<Int>& chi);
OrderLattice direct_sum(const OrderLattice& a, const OrderLattice& b);
// The sublattice with basis the columns of `basis` (square, nonsingular,
// action-stable), carrying the conjugated action.
OrderLattice sublattice(const OrderLattice& l, const IntMat& basis);
// Matrix of y ↦ y·x on the regular lattice (right multiplication commutes
// with the left-regular action).
IntMat right_mult_matrix(const ZOrder& r, const std::vector<Int>& x);

// Intertwining map of lattices over the same order.
class LatHom {
  public:
    LatHom(OrderLattice src, OrderLattice dst, IntMat mat);

    const OrderLattice& src() const { return src_; }
    const OrderLattice& dst() const { return dst_; }
    const IntMat& mat() const { return mat_; }
    static LatHom identity(const OrderLattice& l);

    bool operator==(const LatHom& o) const {
        return src_ == o.src_ && dst_ == o.dst_ && mat_ == o.mat_;
    }

  private:
    OrderLattice src_, dst_;
    IntMat mat_;
};

LatHom compose(const LatHom& g, const LatHom& f);

// E_L = {φ ∈ M_m(Z) : φ commutes with the action}; saturated, so qbasis is
// simultaneously a Q-basis of the rational commutant End_A(V).
struct CommutantLattice {
    std::size_t mat_dim;        // φ are mat_dim × mat_dim
    std::vector<IntMat> qbasis; // Z-basis of E_L
    IntMat coords;              // E_L in qbasis coordinates (identity)

    std::size_t ambient_dim() const { return qbasis.size(); }
};

CommutantLattice end_lattice(const OrderLattice& l);
// Z-basis of {ψ : ψ·act_src = act_dst·ψ}.
std::vector<IntMat> hom_lattice(const OrderLattice& src, const OrderLattice& dst);

// True iff Q⊗L ≅ Q⊗M as modules over the (semisimple) rational algebra.
bool commensurable(const OrderLattice& l, const OrderLattice& m);

// Endomorphism-level index of the self-commensurability attached to an
// invertible α in the rational commutant:
//   (E_L : E_{αL} ∩ E_L) / (E_L : E_L ∩ E_{α⁻¹L}),  E_{αL} = α E_L α⁻¹.
Rat ie_self(const OrderLattice& l, const RatMat& alpha);

// Index computed through an explicit rational isomorphism φ: Q⊗L → Q⊗M,
// with M' = φ⁻¹(M):  (E_{M'} : E_L ∩ E_{M'}) / (E_L : E_L ∩ E_{M'}).
Rat ie_via_phi(const OrderLattice& l, const OrderLattice& m, const RatMat& phi);

// Deterministic φ: the k-th invertible integer combination of the hom-lattice
// basis, enumerated by increasing sup-norm, then lexicographically, skipping
// sign duplicates (first nonzero coefficient > 0).
RatMat choose_iso(const OrderLattice& l, const OrderLattice& m, std::size_t k = 0);

Rat ie_pair(const OrderLattice& l, const OrderLattice& m, std::size_t phi_choice = 0);

// Corr-calculus context over lattices.
struct LatticeCtx {
    using Obj = OrderLattice;
    using Map = LatHom;

    struct Pullback {
        OrderLattice apex;
        LatHom p0, p1;
        IntMat t; // columns: basis of {(x,y) : Fx = Hy} in Z^{a+b}
    };

    static const OrderLattice& src(const Map& f) { return f.src(); }
    static const OrderLattice& dst(const Map& f) { return f.dst(); }
    static Map identity(const Obj& x) { return LatHom::identity(x); }
    static Map compose(const Map& g, const Map& f) { return commidx::compose(g, f); }
    static bool obj_equal(const Obj& a, const Obj& b) { return a == b; }
    static bool map_equal(const Map& f, const Map& g) { return f == g; }
    static IsogenyCheck check(const Map& f);
    static Pullback fibre_product(const Map& f, const Map& h);
    static Map mediate(const Pullback& pb, const Map& u, const Map& v);
};

// Deterministic-per-seed self-commensurability (L∩α⁻¹L, incl, α·) with α a
// random invertible element of the integral commutant E_L.
struct SampledCommensurability {
    Correspondence<LatticeCtx> corr;
    IntMat alpha;
};
SampledCommensurability sample_self_commensurability(const OrderLattice& l, const Int& seed);

// True iff #(L/mL) = m^zrank exactly.
bool lemma_p_check(const OrderLattice& l, const Int& m);

// Finite abelian group with a compatible action of the order.
class FiniteModule {
  public:
    FiniteModule(ZOrder order, FgAbGroup grp, std::vector<IntMat> action);

    const ZOrder& order() const { return order_; }
    const FgAbGroup& grp() const { return grp_; }
    const std::vector<IntMat>& action() const { return action_; }

    bool operator==(const FiniteModule& o) const {
        return order_ == o.order_ && grp_ == o.grp_ && action_ == o.action_;
    }

  private:
    ZOrder order_;
    FgAbGroup grp_;
    std::vector<IntMat> action_;
};

// Lattice ⊕ finite module over one order; only split inputs are representable.
struct MixedModule {
    OrderLattice free_part;
    FiniteModule tors_part;

    MixedModule(OrderLattice f, FiniteModule t);
};
// Validates that every action matrix is block-diagonal for the torsion/free
// generator split; rejects non-split presentations.
MixedModule mixed_module(const ZOrder& r, const FgAbGroup& grp,
                         const std::vector<IntMat>& action);

FiniteModule torsion_submodule(const MixedModule& m);
FiniteModule torsion_submodule(const OrderLattice& l); // zero module
FiniteModule torsion_submodule(const FiniteModule& m); // itself

// All module automorphisms, as generator-image matrices (canonically reduced).
// The candidate count (product of admissible images per generator) must not
// exceed `cap`.
std::vector<IntMat> aut_enumerate(const FiniteModule& m, const Int& cap = Int(4096));

Rat ia_finite(const FiniteModule& l, const FiniteModule& m, const Int& cap = Int(4096));

struct Submodule {
    FiniteModule mod;
    AbHom incl; // on underlying groups; intertwines the actions
};
// Smallest submodule containing the columns of gens (closure under the action).
Submodule submodule_from_generators(const FiniteModule& m, const IntMat& gens);

// (Aut M : H), #ker ρ, (Aut L : ρH) for H = {σ ∈ Aut M : σL = L} and
// ρ: H → Aut L the restriction.
struct StabilizerDecomposition {
    Int aut_m_order;
    Int h_index;
    Int ker_rho_order;
    Int rho_image_index;

    Rat value() const { return Rat(h_index * ker_rho_order) / Rat(rho_image_index); }
};
// gens must generate an action-stable subgroup (else NotSubmodule).
StabilizerDecomposition stabilizer_data(const FiniteModule& m, const IntMat& gens,
                                        const Int& cap = Int(4096));

// Intertwining map of finite modules over the same order.
class FinModHom {
  public:
    FinModHom(FiniteModule src, FiniteModule dst, IntMat mat);

    const FiniteModule& src() const { return src_; }
    const FiniteModule& dst() const { return dst_; }
    const AbHom& hom() const { return hom_; }
    const IntMat& mat() const { return hom_.mat(); }

  private:
    FiniteModule src_, dst_;
    AbHom hom_;
};

} // namespace commidx
