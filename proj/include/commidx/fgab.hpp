#pragma once

#include <optional>
#include <vector>

#include "commidx/linalg.hpp"

namespace commidx {

// Finitely generated abelian group in invariant-factor form:
//   Z/d1 ⊕ … ⊕ Z/dk ⊕ Z^rank  with 2 ≤ d1 | d2 | … | dk.
// Generator order is fixed: torsion generators first, then free ones.
// The representation is canonical: two groups are equal iff fields are.
class FgAbGroup {
public:
    FgAbGroup() = default; // trivial group
    FgAbGroup(std::size_t rank, std::vector<Int> torsion);

    std::size_t rank() const { return rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    std::size_t ntors() const { return torsion_.size(); }
    std::size_t ngens() const { return torsion_.size() + rank_; }
    bool is_finite() const { return rank_ == 0; }
    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
    Int order() const; // throws NotFinite when rank > 0
    // d_i for torsion generators, 0 for free ones.
    Int gen_order(std::size_t i) const;
    // ngens × ntors matrix whose columns d_i·e_i span the relations.
    IntMat relation_matrix() const;

    bool operator==(const FgAbGroup& o) const {
        return rank_ == o.rank_ && torsion_ == o.torsion_;
    }
    bool operator!=(const FgAbGroup& o) const { return !(*this == o); }

private:
    std::size_t rank_ = 0;
    std::vector<Int> torsion_;
};

// Reduce torsion coordinates into [0, d_i); rows are indexed by generators
// of dst. Free coordinates pass through.
IntMat reduce_mat(const FgAbGroup& dst, IntMat m);
std::vector<Int> reduce_vec(const FgAbGroup& g, std::vector<Int> v);

// Homomorphism stored as a matrix on generators (column j = image of the
// j-th src generator); entries canonically reduced. Well-definedness —
// order(src gen) kills the image — is checked at construction.
class AbHom {
public:
    AbHom(FgAbGroup src, FgAbGroup dst, IntMat mat);
    static AbHom identity(const FgAbGroup& g);
    static AbHom zero(const FgAbGroup& src, const FgAbGroup& dst);

    const FgAbGroup& src() const { return src_; }
    const FgAbGroup& dst() const { return dst_; }
    const IntMat& mat() const { return mat_; }

    bool operator==(const AbHom& o) const {
        return src_ == o.src_ && dst_ == o.dst_ && mat_ == o.mat_;
    }
    bool operator!=(const AbHom& o) const { return !(*this == o); }

private:
    FgAbGroup src_, dst_;
    IntMat mat_;
};

AbHom compose(const AbHom& g, const AbHom& f); // g ∘ f
AbHom hom_add(const AbHom& a, const AbHom& b);

// Canonicalization of a presentation Z^ngens / colspan(rel), with both
// directions of the change of coordinates:
//   to_canon   (canon gens × ngens): old coordinates -> canonical ones
//   from_canon (ngens × canon gens): lift of each canonical generator
struct Presented {
    FgAbGroup grp;
    IntMat to_canon;
    IntMat from_canon;
};
Presented present(std::size_t ngens, const IntMat& relation_cols);

// Rows of rel are relations on cols(rel) generators.
FgAbGroup from_presentation(const IntMat& rel);

struct IsogenyCertificate {
    Int ker_order;
    Int coker_order;
    Rat index; // coker_order / ker_order
};

struct IsogenyCheck {
    bool kernel_finite;
    bool cokernel_finite;
    std::optional<IsogenyCertificate> cert; // set iff both finite
};

IsogenyCheck check_isogeny(const AbHom& h);
IsogenyCertificate hom_certify(const AbHom& h); // throws NotIsogeny

// #Aut of a finite group by the closed per-prime formula (enumeration
// cannot reach the required sizes; the brute-force count lives in the
// oracle module as an independent check).
Int aut_order(const FgAbGroup& t);

// ((#M0)^n · #Aut M0) / ((#L0)^n · #Aut L0); RankMismatch when the free
// ranks differ (no commensurability exists between the groups then).
Rat ia_abelian(const FgAbGroup& l, const FgAbGroup& m);

struct TorsionSplit {
    std::size_t free_rank;
    FgAbGroup torsion;
};
TorsionSplit torsion_split(const FgAbGroup& g);

// All elements of a finite group as reduced coordinate vectors,
// mixed-radix order. Throws NotFinite / CapExceeded.
std::vector<std::vector<Int>> elements(const FgAbGroup& g, const Int& cap);

struct Subgroup {
    FgAbGroup grp; // abstract canonical form
    AbHom incl;    // grp -> parent
};
// Subgroup generated by the columns of gens (parent coordinates).
Subgroup subgroup_from_generators(const FgAbGroup& parent, const IntMat& gens);

struct Quotient {
    FgAbGroup grp;
    AbHom proj; // parent -> grp
};
Quotient quotient_by_generators(const FgAbGroup& parent, const IntMat& gens);

// Coordinates of parent elements (columns of x) in the subgroup, i.e. z
// with incl·z ≡ x mod parent relations; nullopt when x is not a member.
std::optional<IntMat> subgroup_coords(const Subgroup& s, const IntMat& x);

} // namespace commidx
