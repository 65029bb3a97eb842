#pragma once

#include <string>
#include <vector>

#include "commidx/corr.hpp"
#include "commidx/fgab.hpp"
#include "commidx/orders.hpp"

namespace commidx::oracle {

// Brute-force reference implementations. Deliberately element-level and
// slow: they share no logic with the fast paths they check (no SNF
// certificates, no closed formulas, no per-prime determinant tests).

struct OracleReport {
    Rat computed;
    std::string method;
    Int element_count; // size of the enumerated universe
};

// Element arithmetic on reduced coordinate vectors of a finite group.
std::vector<Int> elt_add(const FgAbGroup& g, const std::vector<Int>& a,
                         const std::vector<Int>& b);
std::vector<Int> elt_scale(const FgAbGroup& g, const Int& s, const std::vector<Int>& a);
// Image of x under the map sending generator j to images[j].
std::vector<Int> elt_apply(const FgAbGroup& dst, const std::vector<std::vector<Int>>& images,
                           const FgAbGroup& src, const std::vector<Int>& x);

// Every homomorphism src -> dst, found by scanning all generator-image
// tuples whose orders are admissible (admissibility itself established by
// scanning elements, not by a gcd formula). Returned as generator-image
// tuples. Throws CapExceeded when the tuple universe exceeds cap.
std::vector<std::vector<std::vector<Int>>> enumerate_group_homs(const FgAbGroup& src,
                                                                const FgAbGroup& dst,
                                                                const Int& cap);

// #Aut by exhaustive enumeration; bijectivity decided by materializing the
// image set. Independent oracle for fgab::aut_order.
Int aut_order_enumerated(const FgAbGroup& g, const Int& cap);

// Every module homomorphism a → b over the shared order: group-hom tuples
// filtered by checking φ(e_i·x) = e_i·φ(x) at every element of a, for every
// basis element e_i of the order.
std::vector<std::vector<std::vector<Int>>> enumerate_module_homs(const FiniteModule& a,
                                                                 const FiniteModule& b,
                                                                 const Int& cap);

// Index of a correspondence of finite groups recomputed from raw element
// counts: each leg h: W → X contributes (#X / #h(W)) / #ker h, and the
// result is the right leg's value divided by the left's.
OracleReport correspondence_index_bruteforce(const Correspondence<AbGroupContext>& c,
                                             const Int& cap);

// Index of the automorphism correspondence attached to a correspondence of
// finite modules (W, f: W → L, g: W → M): enumerates the bijective triples
// (λ, μ, ν) with λf = fν and μg = gν by a keyed join over End W, then counts
// kernel and image of each projection leg by hand.
OracleReport aut_correspondence_index(const FinModHom& f, const FinModHom& g, const Int& cap);

} // namespace commidx::oracle
