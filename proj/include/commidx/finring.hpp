#pragma once

#include <cstddef>
#include <vector>

#include "commidx/fgab.hpp"
#include "commidx/linalg.hpp"

namespace commidx {

// Finite unital ring: additive group in canonical invariant-factor form,
// multiplication as structure constants on the additive generators.
// structure[(i*n + j)*n + k] = coefficient of e_k in e_i·e_j.
// Construction validates: multiplication well defined modulo the relations,
// associative on all generator triples, unity two-sided. The zero ring is
// rejected.
class FiniteRing {
public:
    FiniteRing(FgAbGroup add, std::vector<Int> structure, std::vector<Int> unity);

    const FgAbGroup& add() const { return add_; }
    std::size_t ngens() const { return add_.ngens(); }
    Int size() const { return add_.order(); }
    const std::vector<Int>& unity() const { return unity_; }
    const std::vector<Int>& structure() const { return structure_; }
    const Int& c(std::size_t i, std::size_t j, std::size_t k) const {
        return structure_[(i * ngens() + j) * ngens() + k];
    }

    std::vector<Int> zero() const { return std::vector<Int>(ngens(), Int(0)); }
    std::vector<Int> product(const std::vector<Int>& x, const std::vector<Int>& y) const;
    std::vector<Int> power(const std::vector<Int>& x, const Int& e) const; // e ≥ 0

    bool operator==(const FiniteRing& o) const {
        return add_ == o.add_ && structure_ == o.structure_ && unity_ == o.unity_;
    }
    bool operator!=(const FiniteRing& o) const { return !(*this == o); }

private:
    FgAbGroup add_;
    std::vector<Int> structure_;
    std::vector<Int> unity_;
};

// Unital ring homomorphism; the matrix acts on additive generators
// (column j = image of src generator j). Construction validates additivity
// (via AbHom), multiplicativity on generator pairs, and f(1) = 1.
class FiniteRingHom {
public:
    FiniteRingHom(FiniteRing src, FiniteRing dst, IntMat mat);
    static FiniteRingHom identity(const FiniteRing& r);

    const FiniteRing& src() const { return src_; }
    const FiniteRing& dst() const { return dst_; }
    const IntMat& mat() const { return mat_; }
    std::vector<Int> apply(const std::vector<Int>& x) const;

private:
    FiniteRing src_, dst_;
    IntMat mat_;
};

// --- constructors ---------------------------------------------------------

FiniteRing zmod(const Int& n); // n ≥ 2

// Finite field of order q ∈ {2,3,4,5,7,8,9} on the power basis 1, t, t².
// Fixed defining polynomials: t²+t+1 (q=4), t³+t+1 (q=8), t²+1 (q=9).
FiniteRing gf(const Int& q); // NotPrimePower; CapExceeded for prime powers > 9

// Product ring A × B. The additive group is canonicalized, so the product's
// generators need not split by factor; the embedding/projection matrices
// (in canonical coordinates) record the factors. emb_* are additive only
// (not unital); proj_* are unital.
struct ProductRing {
    FiniteRing ring;
    IntMat emb_a, emb_b;   // factor gens -> product gens
    IntMat proj_a, proj_b; // product gens -> factor gens
};
ProductRing product_ring(const FiniteRing& a, const FiniteRing& b);
FiniteRingHom product_proj_a(const ProductRing& p, const FiniteRing& a);
FiniteRingHom product_proj_b(const ProductRing& p, const FiniteRing& b);

// M(n, base) on generators (entry pair row-major) × (base generator); the
// generator order is preserved as given whenever the base has equal
// invariant factors (true for every built-in constructor).
FiniteRing matrix_ring_over(const FiniteRing& base, std::size_t n);
// Upper-triangular n×n matrices over base; pairs (r,s) with r ≤ s, row-major.
FiniteRing triangular_ring_over(const FiniteRing& base, std::size_t n);

// M(n, F_q); q ≤ 9 and n ≤ 3 (CapExceeded beyond).
FiniteRing matrix_ring(const Int& q, std::size_t n);

// --- element-level machinery ----------------------------------------------

// All elements as reduced coordinate vectors, mixed-radix order.
std::vector<std::vector<Int>> ring_elements(const FiniteRing& e, const Int& cap = Int(65536));

// All two-sided units (u·v = v·u = 1 for some v), by exhaustive pair scan.
std::vector<std::vector<Int>> unit_group(const FiniteRing& e, const Int& cap = Int(65536));

// All y such that 1 − x·y·z is a unit for every x, z.
std::vector<std::vector<Int>> jacobson_radical(const FiniteRing& e,
                                               const Int& cap = Int(65536));

// Elements commuting with every generator, by solving the linear systems
// (L_i − R_i)·x ≡ 0 over the additive group.
Subgroup centre(const FiniteRing& e);

struct UnitIsogenyReport {
    Rat ring_index;      // #coker / #ker of the additive map
    Int unit_ker_order;  // units of src mapping to 1
    Int unit_image_index; // #units(dst) / #image
    bool ring_surjective;
    bool unit_surjective;
    bool unit_map_isogeny;        // kernel and image index both finite
    bool surjectivity_preserved;  // ring surjective ⇒ unit map surjective
};
UnitIsogenyReport check_unit_isogeny(const FiniteRingHom& h, const Int& cap = Int(65536));

// Exponent of U(B) / (central units · commutators): the least e with
// u^e in the generated normal subgroup, lcm'ed over all units u.
Int unit_quotient_exponent(const FiniteRing& b, const Int& cap = Int(65536));

// Two-sided ideal generated by the columns of gens, as an additive subgroup.
Subgroup ideal_from_generators(const FiniteRing& e, const IntMat& gens);

// Quotient by the two-sided ideal generated by gens, with its projection.
struct RingQuotient {
    FiniteRing ring;
    FiniteRingHom proj;
};
RingQuotient quotient_ring(const FiniteRing& e, const IntMat& ideal_gens);

// --- built-in catalogs ------------------------------------------------------

// ≥ 20 homs: Z/p^k quotient chains, CRT isomorphisms, diagonal embeddings,
// product projections, scalar/diagonal/triangular inclusions into M_2(Z/4),
// entrywise reduction M_2(Z/4) → M_2(F_2), and the field embedding
// F_4 → M_2(F_2) by the companion matrix of t²+t+1.
std::vector<FiniteRingHom> theorem_o_catalog();

// Pairs (ring, ideal generators) with the ideal inside the radical.
struct RadicalIdealCase {
    FiniteRing ring;
    IntMat ideal_gens;
};
std::vector<RadicalIdealCase> radical_ideal_catalog();

// The ideal lies inside jacobson_radical(e) and units lift along the
// quotient map e → e/I (the unit map is surjective).
bool lemma_j_check(const FiniteRing& e, const IntMat& ideal_gens,
                   const Int& cap = Int(65536));

} // namespace commidx
