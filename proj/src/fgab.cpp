#include "commidx/fgab.hpp"

#include <algorithm>
#include <map>

namespace commidx {

using boost::multiprecision::abs;
using boost::multiprecision::pow;

FgAbGroup::FgAbGroup(std::size_t rank, std::vector<Int> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2) throw BadDefinition("invariant factor < 2");
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw BadDefinition("invariant factors must form a divisibility chain");
    }
}

Int FgAbGroup::order() const {
    if (rank_ > 0) throw NotFinite("order of infinite group");
    Int o = 1;
    for (const Int& d : torsion_) o *= d;
    return o;
}

Int FgAbGroup::gen_order(std::size_t i) const {
    return i < torsion_.size() ? torsion_[i] : Int(0);
}

IntMat FgAbGroup::relation_matrix() const {
    IntMat r(ngens(), ntors());
    for (std::size_t i = 0; i < ntors(); ++i) r(i, i) = torsion_[i];
    return r;
}

IntMat reduce_mat(const FgAbGroup& dst, IntMat m) {
    if (m.rows() != dst.ngens()) throw BadDefinition("reduce_mat row mismatch");
    for (std::size_t i = 0; i < dst.ntors(); ++i) {
        const Int& d = dst.torsion()[i];
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = m(i, j) - floor_div(m(i, j), d) * d;
    }
    return m;
}

std::vector<Int> reduce_vec(const FgAbGroup& g, std::vector<Int> v) {
    if (v.size() != g.ngens()) throw BadDefinition("reduce_vec size mismatch");
    for (std::size_t i = 0; i < g.ntors(); ++i) {
        const Int& d = g.torsion()[i];
        v[i] = v[i] - floor_div(v[i], d) * d;
    }
    return v;
}

AbHom::AbHom(FgAbGroup src, FgAbGroup dst, IntMat mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {
    if (mat_.rows() != dst_.ngens() || mat_.cols() != src_.ngens())
        throw BadDefinition("hom matrix shape mismatch");
    // d_j · (column j) must vanish in dst for every torsion generator j.
    for (std::size_t j = 0; j < src_.ntors(); ++j) {
        const Int& dj = src_.torsion()[j];
        for (std::size_t i = 0; i < dst_.ngens(); ++i) {
            Int v = dj * mat_(i, j);
            if (i < dst_.ntors() ? (v % dst_.torsion()[i] != 0) : (v != 0))
                throw BadDefinition("matrix does not define a homomorphism");
        }
    }
    mat_ = reduce_mat(dst_, std::move(mat_));
}

AbHom AbHom::identity(const FgAbGroup& g) {
    return AbHom(g, g, IntMat::identity(g.ngens()));
}

AbHom AbHom::zero(const FgAbGroup& src, const FgAbGroup& dst) {
    return AbHom(src, dst, IntMat(dst.ngens(), src.ngens()));
}

AbHom compose(const AbHom& g, const AbHom& f) {
    if (f.dst() != g.src()) throw ObjectMismatch("compose: middle objects differ");
    return AbHom(f.src(), g.dst(), g.mat() * f.mat());
}

AbHom hom_add(const AbHom& a, const AbHom& b) {
    if (a.src() != b.src() || a.dst() != b.dst()) throw ObjectMismatch("hom_add: shape");
    return AbHom(a.src(), a.dst(), a.mat() + b.mat());
}

Presented present(std::size_t ngens, const IntMat& relation_cols) {
    if (relation_cols.rows() != ngens) throw BadDefinition("present: relation rows != ngens");
    SnfResult s = snf(relation_cols);
    const std::size_t r = s.d.size();
    std::vector<std::size_t> kept;
    std::vector<Int> torsion;
    for (std::size_t i = 0; i < ngens; ++i) {
        if (i < r && s.d[i] == 1) continue;
        kept.push_back(i);
        if (i < r) torsion.push_back(s.d[i]);
    }
    FgAbGroup grp(ngens - r, std::move(torsion));
    IntMat to_canon(kept.size(), ngens);
    for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t j = 0; j < ngens; ++j) to_canon(a, j) = s.u(kept[a], j);
    auto uinv = to_int(inverse(to_rat(s.u)));
    IntMat from_canon(ngens, kept.size());
    for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t i = 0; i < ngens; ++i) from_canon(i, a) = (*uinv)(i, kept[a]);
    to_canon = reduce_mat(grp, std::move(to_canon));
    return Presented{std::move(grp), std::move(to_canon), std::move(from_canon)};
}

FgAbGroup from_presentation(const IntMat& rel) {
    return present(rel.cols(), rel.transpose()).grp;
}

IsogenyCheck check_isogeny(const AbHom& h) {
    const FgAbGroup& s = h.src();
    const FgAbGroup& d = h.dst();
    IntMat rs = s.relation_matrix();
    IntMat rd = d.relation_matrix();

    // Kernel: P = {x : F·x lies in dst relations}; ker h = P / src relations.
    IntMat k = kernel_basis(hstack(h.mat(), -rd));
    IntMat p = col_basis(k.sub(0, 0, s.ngens(), k.cols()));
    bool ker_finite = (p.cols() == s.ntors());
    // Cokernel of [F | R_dst].
    SnfResult cs = snf(hstack(h.mat(), rd));
    bool coker_finite = (cs.d.size() == d.ngens());

    IsogenyCheck out{ker_finite, coker_finite, std::nullopt};
    if (ker_finite && coker_finite) {
        Int ker = 1;
        if (s.ntors() > 0) {
            Rat idx = lattice_index(p, rs);
            ker = numerator(idx); // exact integer by construction
        }
        Int coker = 1;
        for (const Int& di : cs.d) coker *= di;
        out.cert = IsogenyCertificate{ker, coker, Rat(coker) / Rat(ker)};
    }
    return out;
}

IsogenyCertificate hom_certify(const AbHom& h) {
    IsogenyCheck c = check_isogeny(h);
    if (!c.cert) throw NotIsogeny(!c.kernel_finite, !c.cokernel_finite);
    return *c.cert;
}

namespace {

// prime -> ascending exponents, from the invariant factors.
std::map<Int, std::vector<unsigned>> prime_exponents(const std::vector<Int>& torsion) {
    std::map<Int, std::vector<unsigned>> exps;
    if (torsion.empty()) return exps;
    // The largest invariant factor is divisible by every relevant prime.
    Int top = torsion.back();
    std::vector<Int> primes;
    Int rem = top;
    for (Int p = 2; p * p <= rem; ++p)
        if (rem % p == 0) {
            primes.push_back(p);
            while (rem % p == 0) rem /= p;
        }
    if (rem > 1) primes.push_back(rem);
    for (const Int& p : primes)
        for (const Int& d : torsion) {
            unsigned e = 0;
            Int v = d;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            if (e > 0) exps[p].push_back(e); // ascending since d1 | d2 | …
        }
    return exps;
}

// #Aut of the abelian p-group with ascending type e_1 ≤ … ≤ e_n
// (Hillar–Rhea closed form).
Int aut_order_p(const Int& p, const std::vector<unsigned>& e) {
    const std::size_t n = e.size();
    std::vector<std::size_t> dmax(n), cmin(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t dk = k, ck = k;
        while (dk + 1 < n && e[dk + 1] == e[k]) ++dk;
        while (ck > 0 && e[ck - 1] == e[k]) --ck;
        dmax[k] = dk + 1; // 1-based in the formula
        cmin[k] = ck + 1;
    }
    Int out = 1;
    for (std::size_t k = 0; k < n; ++k)
        out *= pow(p, static_cast<unsigned>(dmax[k])) - pow(p, static_cast<unsigned>(k));
    for (std::size_t j = 0; j < n; ++j)
        out *= pow(p, e[j] * static_cast<unsigned>(n - dmax[j]));
    for (std::size_t i = 0; i < n; ++i)
        out *= pow(p, (e[i] - 1) * static_cast<unsigned>(n - cmin[i] + 1));
    return out;
}

} // namespace

Int aut_order(const FgAbGroup& t) {
    if (!t.is_finite()) throw NotFinite("aut_order needs a finite group");
    Int out = 1;
    for (const auto& [p, e] : prime_exponents(t.torsion())) out *= aut_order_p(p, e);
    return out;
}

Rat ia_abelian(const FgAbGroup& l, const FgAbGroup& m) {
    if (l.rank() != m.rank()) throw RankMismatch("ia: free ranks differ");
    TorsionSplit ls = torsion_split(l), ms = torsion_split(m);
    unsigned n = static_cast<unsigned>(l.rank());
    Rat num = Rat(pow(ms.torsion.order(), n) * aut_order(ms.torsion));
    Rat den = Rat(pow(ls.torsion.order(), n) * aut_order(ls.torsion));
    return num / den;
}

TorsionSplit torsion_split(const FgAbGroup& g) {
    return TorsionSplit{g.rank(), FgAbGroup(0, g.torsion())};
}

std::vector<std::vector<Int>> elements(const FgAbGroup& g, const Int& cap) {
    Int n = g.order(); // throws NotFinite for positive rank
    if (n > cap) throw CapExceeded("element enumeration over cap");
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(g.ngens(), 0);
    out.reserve(static_cast<std::size_t>(n));
    for (Int c = 0; c < n; ++c) {
        out.push_back(cur);
        for (std::size_t i = 0; i < g.ntors(); ++i) {
            if (++cur[i] < g.torsion()[i]) break;
            cur[i] = 0;
        }
    }
    return out;
}

Subgroup subgroup_from_generators(const FgAbGroup& parent, const IntMat& gens) {
    if (gens.rows() != parent.ngens()) throw BadDefinition("subgroup generators shape");
    IntMat rp = parent.relation_matrix();
    // Lattice of the subgroup's preimage in Z^ngens.
    IntMat b = col_basis(hstack(gens, rp));
    // Relations of the subgroup on that basis: {z : B·z ∈ span(R_parent)}.
    IntMat k = kernel_basis(hstack(b, -rp));
    IntMat rel = col_basis(k.sub(0, 0, b.cols(), k.cols()));
    Presented p = present(b.cols(), rel);
    AbHom incl(p.grp, parent, b * p.from_canon);
    return Subgroup{p.grp, std::move(incl)};
}

Quotient quotient_by_generators(const FgAbGroup& parent, const IntMat& gens) {
    if (gens.rows() != parent.ngens()) throw BadDefinition("quotient generators shape");
    Presented p = present(parent.ngens(), hstack(parent.relation_matrix(), gens));
    AbHom proj(parent, p.grp, p.to_canon);
    return Quotient{p.grp, std::move(proj)};
}

std::optional<IntMat> subgroup_coords(const Subgroup& s, const IntMat& x) {
    const FgAbGroup& parent = s.incl.dst();
    IntMat m = hstack(s.incl.mat(), parent.relation_matrix());
    auto w = solve_integer(m, x);
    if (!w) return std::nullopt;
    return reduce_mat(s.grp, w->sub(0, 0, s.grp.ngens(), x.cols()));
}

} // namespace commidx
