#pragma once

#include "commidx/fgab.hpp"

// Generic correspondence calculus, parameterized over a context supplying
// objects, maps, isogeny certification, and fibre products.
//
// A context Ctx provides:
//   types  Obj, Map, Pullback {apex, p0, p1, ...}
//   static Obj  src(Map), dst(Map)
//   static Map  identity(Obj)
//   static Map  compose(Map g, Map f)            // g ∘ f
//   static bool obj_equal(Obj, Obj), map_equal(Map, Map)
//   static IsogenyCheck check(Map)
//   static Pullback fibre_product(Map f, Map h)  // f: X→M, h: Y→M
//   static Map mediate(Pullback, Map u, Map v)   // unique w with p0w=u, p1w=v

namespace commidx {

// (W, f: W→L, g: W→M); a correspondence L ⇌ M.
template <class Ctx>
struct Correspondence {
    typename Ctx::Obj apex;
    typename Ctx::Map left, right;

    Correspondence(typename Ctx::Obj w, typename Ctx::Map f, typename Ctx::Map g)
        : apex(std::move(w)), left(std::move(f)), right(std::move(g)) {
        if (!Ctx::obj_equal(Ctx::src(left), apex) || !Ctx::obj_equal(Ctx::src(right), apex))
            throw BadDefinition("correspondence legs must share the apex as source");
    }
};

// A correspondence whose legs are certified isogenies.
template <class Ctx>
struct Commensurability {
    Correspondence<Ctx> base;
    IsogenyCertificate left_cert, right_cert;

    Rat index() const { return right_cert.index / left_cert.index; }
};

// (Y, p: Y→apex(c), q: Y→apex(d)) exhibiting c ≃ d.
template <class Ctx>
struct EquivalenceWitness {
    typename Ctx::Obj apex;
    typename Ctx::Map p, q;
};

template <class Ctx>
Commensurability<Ctx> certify(const Correspondence<Ctx>& c) {
    auto lc = Ctx::check(c.left);
    auto rc = Ctx::check(c.right);
    if (!lc.cert) throw NotIsogeny(!lc.kernel_finite, !lc.cokernel_finite);
    if (!rc.cert) throw NotIsogeny(!rc.kernel_finite, !rc.cokernel_finite);
    return {c, *lc.cert, *rc.cert};
}

// c_f = (L, id, f).
template <class Ctx>
Commensurability<Ctx> from_isogeny(const typename Ctx::Map& f) {
    auto l = Ctx::src(f);
    return certify<Ctx>(Correspondence<Ctx>(l, Ctx::identity(l), f));
}

template <class Ctx>
Correspondence<Ctx> identity_corr(const typename Ctx::Obj& x) {
    return Correspondence<Ctx>(x, Ctx::identity(x), Ctx::identity(x));
}

// (X×_M Y, f∘p0, j∘p1) for c = (X,f,g): L⇌M and d = (Y,h,j): M⇌N.
template <class Ctx>
Correspondence<Ctx> compose_corr(const Correspondence<Ctx>& c, const Correspondence<Ctx>& d) {
    if (!Ctx::obj_equal(Ctx::dst(c.right), Ctx::dst(d.left)))
        throw ObjectMismatch("correspondences are not composable");
    auto pb = Ctx::fibre_product(c.right, d.left);
    return Correspondence<Ctx>(pb.apex, Ctx::compose(c.left, pb.p0), Ctx::compose(d.right, pb.p1));
}

template <class Ctx>
Commensurability<Ctx> compose_corr(const Commensurability<Ctx>& c, const Commensurability<Ctx>& d) {
    return certify(compose_corr(c.base, d.base));
}

template <class Ctx>
Correspondence<Ctx> inverse(const Correspondence<Ctx>& c) {
    return Correspondence<Ctx>(c.apex, c.right, c.left);
}

template <class Ctx>
Commensurability<Ctx> inverse(const Commensurability<Ctx>& c) {
    return {inverse(c.base), c.right_cert, c.left_cert};
}

// True iff both witness legs are isogenies and both squares commute exactly:
// c.left∘p = d.left∘q and c.right∘p = d.right∘q.
template <class Ctx>
bool verify_equivalence(const Correspondence<Ctx>& c, const Correspondence<Ctx>& d,
                        const EquivalenceWitness<Ctx>& w) {
    if (!Ctx::obj_equal(Ctx::dst(c.left), Ctx::dst(d.left)) ||
        !Ctx::obj_equal(Ctx::dst(c.right), Ctx::dst(d.right)))
        throw EndpointMismatch("correspondences do not share endpoints");
    if (!Ctx::obj_equal(Ctx::src(w.p), w.apex) || !Ctx::obj_equal(Ctx::src(w.q), w.apex))
        return false;
    if (!Ctx::obj_equal(Ctx::dst(w.p), c.apex) || !Ctx::obj_equal(Ctx::dst(w.q), d.apex))
        return false;
    if (!Ctx::check(w.p).cert || !Ctx::check(w.q).cert) return false;
    return Ctx::map_equal(Ctx::compose(c.left, w.p), Ctx::compose(d.left, w.q)) &&
           Ctx::map_equal(Ctx::compose(c.right, w.p), Ctx::compose(d.right, w.q));
}

// Witness that c⁻¹∘c ≃ (L,id,id): the diagonal W → W×_M W paired with c.left.
template <class Ctx>
EquivalenceWitness<Ctx> inverse_law_witness(const Correspondence<Ctx>& c) {
    auto pb = Ctx::fibre_product(c.right, c.right);
    auto idw = Ctx::identity(c.apex);
    return {c.apex, Ctx::mediate(pb, idw, idw), c.left};
}

// --- Context for finitely generated abelian groups -------------------------

struct AbGroupContext {
    using Obj = FgAbGroup;
    using Map = AbHom;

    struct Pullback {
        FgAbGroup apex;
        AbHom p0, p1;
        IntMat t;        // columns: basis of {(x,y) : Fx ≡ Hy mod rel(M)} in Z^{a+b}
        IntMat to_canon; // generator coordinates → canonical apex coordinates
    };

    static const FgAbGroup& src(const Map& f) { return f.src(); }
    static const FgAbGroup& dst(const Map& f) { return f.dst(); }
    static Map identity(const Obj& x) { return AbHom::identity(x); }
    static Map compose(const Map& g, const Map& f) { return commidx::compose(g, f); }
    static bool obj_equal(const Obj& a, const Obj& b) { return a == b; }
    static bool map_equal(const Map& f, const Map& g) { return f == g; }
    static IsogenyCheck check(const Map& f) { return check_isogeny(f); }

    static Pullback fibre_product(const Map& f, const Map& h) {
        if (!(f.dst() == h.dst())) throw ObjectMismatch("fibre product needs a common target");
        const FgAbGroup& x = f.src();
        const FgAbGroup& y = h.src();
        std::size_t a = x.ngens(), b = y.ngens();
        // Lattice of pairs mapping to the same element of M.
        IntMat big = hstack(hstack(f.mat(), Int(-1) * h.mat()),
                            Int(-1) * f.dst().relation_matrix());
        IntMat ker = kernel_basis(big);
        IntMat t = col_basis(ker.sub(0, 0, a + b, ker.cols()));
        // Relations among the generators t: combinations landing in rel(X)⊕rel(Y).
        IntMat rxy(a + b, x.ntors() + y.ntors());
        for (std::size_t i = 0; i < x.ntors(); ++i) rxy(i, i) = x.gen_order(i);
        for (std::size_t i = 0; i < y.ntors(); ++i) rxy(a + i, x.ntors() + i) = y.gen_order(i);
        IntMat kr = kernel_basis(hstack(t, Int(-1) * rxy));
        IntMat rel = kr.sub(0, 0, t.cols(), kr.cols());
        Presented pr = present(t.cols(), rel);
        IntMat emb = t * pr.from_canon;
        AbHom p0(pr.grp, x, emb.sub(0, 0, a, emb.cols()));
        AbHom p1(pr.grp, y, emb.sub(a, 0, b, emb.cols()));
        return {pr.grp, std::move(p0), std::move(p1), std::move(t), std::move(pr.to_canon)};
    }

    // The unique w with p0∘w = u, p1∘w = v; exists iff (u,v) lands in the pullback.
    static Map mediate(const Pullback& pb, const Map& u, const Map& v) {
        if (!(u.src() == v.src())) throw ObjectMismatch("mediating maps need a common source");
        if (!(u.dst() == pb.p0.dst()) || !(v.dst() == pb.p1.dst()))
            throw ObjectMismatch("mediating maps must target the pullback factors");
        auto z = solve_integer(pb.t, vstack(u.mat(), v.mat()));
        if (!z) throw PreconditionError("maps do not factor through the fibre product");
        return AbHom(u.src(), pb.apex, pb.to_canon * *z);
    }
};

} // namespace commidx
