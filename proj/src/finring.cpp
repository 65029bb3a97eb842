#include "commidx/finring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace commidx {

namespace {

IntMat colvec(const std::vector<Int>& v) {
    return IntMat(v.size(), 1, v);
}

std::vector<Int> matvec(const IntMat& m, const std::vector<Int>& v) {
    IntMat r = m * colvec(v);
    return r.entries();
}

std::vector<Int> unit_vec(std::size_t n, std::size_t i) {
    std::vector<Int> v(n, Int(0));
    v[i] = 1;
    return v;
}

// Σ x_i y_j c(i,j,·) without reduction; works on raw structure constants.
std::vector<Int> mul_on_gens(const std::vector<Int>& structure, std::size_t n,
                             const std::vector<Int>& x, const std::vector<Int>& y) {
    std::vector<Int> out(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            Int xy = x[i] * y[j];
            const Int* row = &structure[(i * n + j) * n];
            for (std::size_t k = 0; k < n; ++k)
                if (row[k] != 0) out[k] += xy * row[k];
        }
    }
    return out;
}

bool is_invariant_chain(const std::vector<Int>& moduli) {
    for (const Int& m : moduli)
        if (m < 2) return false;
    for (std::size_t i = 0; i + 1 < moduli.size(); ++i)
        if (moduli[i + 1] % moduli[i] != 0) return false;
    return true;
}

struct BuiltRing {
    FiniteRing ring;
    IntMat to_canon;   // natural generator coords -> ring coords
    IntMat from_canon; // ring generator lifts in natural coords
};

// Ring presented on free generators of the given orders; the additive group
// is canonicalized when the orders are not already an invariant-factor
// chain, transporting the structure constants along the change of basis.
BuiltRing build_ring(const std::vector<Int>& moduli, const std::vector<Int>& structure,
                     const std::vector<Int>& unity) {
    std::size_t n = moduli.size();
    if (n == 0) throw BadDefinition("the zero ring is not a FiniteRing");
    if (is_invariant_chain(moduli)) {
        return {FiniteRing(FgAbGroup(0, moduli), structure, unity), IntMat::identity(n),
                IntMat::identity(n)};
    }
    IntMat rel(n, n);
    for (std::size_t i = 0; i < n; ++i) rel(i, i) = moduli[i];
    Presented pres = present(n, rel);
    std::size_t q = pres.grp.ngens();
    std::vector<Int> cs(q * q * q, Int(0));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<Int> prod = mul_on_gens(structure, n,
                                                pres.from_canon.col(i).entries(),
                                                pres.from_canon.col(j).entries());
            std::vector<Int> img = matvec(pres.to_canon, prod);
            for (std::size_t k = 0; k < q; ++k) cs[(i * q + j) * q + k] = img[k];
        }
    return {FiniteRing(pres.grp, std::move(cs), matvec(pres.to_canon, unity)),
            pres.to_canon, pres.from_canon};
}

IntMat left_mult(const FiniteRing& e, std::size_t i) {
    std::size_t n = e.ngens();
    IntMat m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(k, j) = e.c(i, j, k);
    return m;
}

IntMat right_mult(const FiniteRing& e, std::size_t i) {
    std::size_t n = e.ngens();
    IntMat m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(k, j) = e.c(j, i, k);
    return m;
}

// Machine-word mirror of a FiniteRing for element-level scans. Safe because
// the enumeration cap bounds the additive order (hence every modulus,
// coordinate, and structure constant) by 65536, and products are reduced
// term by term.
struct FastRing {
    std::size_t n;
    std::vector<long> structure;
    std::vector<long> moduli;
    std::vector<long> unity;

    explicit FastRing(const FiniteRing& e) : n(e.ngens()) {
        for (std::size_t i = 0; i < n; ++i) {
            // keeps every product term within a machine word; any such ring
            // is far beyond the element-enumeration caps anyway
            if (e.add().gen_order(i) > (Int(1) << 20))
                throw CapExceeded("ring modulus too large for element scans");
            moduli.push_back(e.add().gen_order(i).convert_to<long>());
        }
        for (const Int& v : e.structure()) structure.push_back(v.convert_to<long>());
        for (const Int& v : e.unity()) unity.push_back(v.convert_to<long>());
    }

    std::vector<long> to_fast(const std::vector<Int>& x) const {
        std::vector<long> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = x[i].convert_to<long>();
        return v;
    }

    std::vector<long> product(const std::vector<long>& x, const std::vector<long>& y) const {
        std::vector<long> out(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                long xy = x[i] * y[j];
                const long* row = &structure[(i * n + j) * n];
                for (std::size_t k = 0; k < n; ++k)
                    if (row[k] != 0) out[k] = (out[k] + (xy % moduli[k]) * row[k]) % moduli[k];
            }
        }
        return out;
    }

    std::vector<long> sub(const std::vector<long>& a, const std::vector<long>& b) const {
        std::vector<long> d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = ((a[k] - b[k]) % moduli[k] + moduli[k]) % moduli[k];
        return d;
    }
};

struct UnitData {
    std::vector<std::vector<Int>> elts;
    std::vector<std::vector<long>> felts;
    std::vector<std::size_t> unit_idx;          // ascending enumeration order
    std::map<std::size_t, std::size_t> inv_of;  // unit index -> inverse index
    std::set<std::vector<long>> unit_set;
};

// Exhaustive two-sided scan: compute every ordered product once, then pair
// up mutual inverses. No one-sided shortcuts.
UnitData unit_scan(const FiniteRing& e, const FastRing& f, const Int& cap) {
    UnitData u;
    u.elts = elements(e.add(), cap);
    for (const auto& x : u.elts) u.felts.push_back(f.to_fast(x));
    std::size_t n = u.elts.size();
    std::map<std::size_t, std::vector<std::size_t>> right_ones;
    std::set<std::pair<std::size_t, std::size_t>> ones;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (f.product(u.felts[i], u.felts[j]) == f.unity) {
                ones.emplace(i, j);
                right_ones[i].push_back(j);
            }
    for (std::size_t i = 0; i < n; ++i) {
        auto it = right_ones.find(i);
        if (it == right_ones.end()) continue;
        for (std::size_t j : it->second)
            if (ones.count({j, i})) {
                u.unit_idx.push_back(i);
                u.inv_of[i] = j;
                u.unit_set.insert(u.felts[i]);
                break;
            }
    }
    return u;
}

UnitData unit_scan(const FiniteRing& e, const Int& cap) {
    return unit_scan(e, FastRing(e), cap);
}

} // namespace

FiniteRing::FiniteRing(FgAbGroup add, std::vector<Int> structure, std::vector<Int> unity)
    : add_(std::move(add)), structure_(std::move(structure)), unity_(std::move(unity)) {
    if (add_.rank() != 0) throw BadDefinition("ring additive group must be finite");
    if (add_.order() < 2) throw BadDefinition("the zero ring is not a FiniteRing");
    std::size_t n = add_.ngens();
    if (structure_.size() != n * n * n) throw BadDefinition("structure constant count mismatch");
    if (unity_.size() != n) throw BadDefinition("unity coordinate count mismatch");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Int> row(structure_.begin() + (i * n + j) * n,
                                 structure_.begin() + (i * n + j + 1) * n);
            row = reduce_vec(add_, std::move(row));
            for (std::size_t k = 0; k < n; ++k) structure_[(i * n + j) * n + k] = row[k];
        }
    unity_ = reduce_vec(add_, std::move(unity_));

    // d_i·(e_i e_j) = (d_i e_i) e_j = 0, and symmetrically in j
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Int& dk = add_.gen_order(k);
                if ((add_.gen_order(i) * c(i, j, k)) % dk != 0 ||
                    (add_.gen_order(j) * c(i, j, k)) % dk != 0)
                    throw BadDefinition("multiplication not well defined over the relations");
            }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Int> eij(structure_.begin() + (i * n + j) * n,
                                 structure_.begin() + (i * n + j + 1) * n);
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<Int> ejk(structure_.begin() + (j * n + k) * n,
                                     structure_.begin() + (j * n + k + 1) * n);
                if (product(eij, unit_vec(n, k)) != product(unit_vec(n, i), ejk))
                    throw BadDefinition("multiplication is not associative");
            }
        }

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> ei = unit_vec(n, i);
        if (product(unity_, ei) != ei || product(ei, unity_) != ei)
            throw BadDefinition("unity is not a two-sided identity");
    }
}

std::vector<Int> FiniteRing::product(const std::vector<Int>& x,
                                     const std::vector<Int>& y) const {
    std::size_t n = ngens();
    if (x.size() != n || y.size() != n)
        throw BadDefinition("element coordinate count mismatch");
    return reduce_vec(add_, mul_on_gens(structure_, n, x, y));
}

std::vector<Int> FiniteRing::power(const std::vector<Int>& x, const Int& e) const {
    if (e < 0) throw BadDefinition("negative ring power");
    std::vector<Int> result = unity_;
    std::vector<Int> base = reduce_vec(add_, x);
    Int k = e;
    while (k > 0) {
        if ((k & 1) != 0) result = product(result, base);
        base = product(base, base);
        k >>= 1;
    }
    return result;
}

FiniteRingHom::FiniteRingHom(FiniteRing src, FiniteRing dst, IntMat mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {
    AbHom ab(src_.add(), dst_.add(), mat_);
    mat_ = ab.mat();
    std::size_t n = src_.ngens();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Int> eij(src_.structure().begin() + (i * n + j) * n,
                                 src_.structure().begin() + (i * n + j + 1) * n);
            if (apply(eij) != dst_.product(mat_.col(i).entries(), mat_.col(j).entries()))
                throw BadDefinition("map does not preserve products");
        }
    if (apply(src_.unity()) != dst_.unity())
        throw BadDefinition("map does not preserve unity");
}

FiniteRingHom FiniteRingHom::identity(const FiniteRing& r) {
    return FiniteRingHom(r, r, IntMat::identity(r.ngens()));
}

std::vector<Int> FiniteRingHom::apply(const std::vector<Int>& x) const {
    if (x.size() != src_.ngens()) throw BadDefinition("element coordinate count mismatch");
    return reduce_vec(dst_.add(), matvec(mat_, x));
}

FiniteRing zmod(const Int& n) {
    if (n < 2) throw BadDefinition("zmod modulus must be at least 2");
    return FiniteRing(FgAbGroup(0, {n}), {Int(1)}, {Int(1)});
}

FiniteRing gf(const Int& q) {
    Int p = 0;
    for (Int d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q; // q itself prime (or 1)
    if (q < 2) throw NotPrimePower("field order must be a prime power");
    Int t = q;
    std::size_t k = 0;
    while (t % p == 0) {
        t /= p;
        ++k;
    }
    if (t != 1) throw NotPrimePower("field order must be a prime power");
    if (q > 9) throw CapExceeded("field order cap is 9");
    if (k == 1) return zmod(p);

    // t^k ≡ top, with fixed defining polynomials t²+t+1, t³+t+1, t²+1
    std::vector<Int> top;
    if (q == 4) top = {Int(1), Int(1)};
    else if (q == 8) top = {Int(1), Int(1), Int(0)};
    else top = {Int(2), Int(0)}; // q == 9

    // rep[m] = coordinates of t^m in the power basis
    std::vector<std::vector<Int>> rep(2 * k - 1, std::vector<Int>(k, Int(0)));
    for (std::size_t m = 0; m < k; ++m) rep[m][m] = 1;
    for (std::size_t m = k; m + 1 < 2 * k; ++m) {
        Int carry = rep[m - 1][k - 1];
        for (std::size_t i = k; i-- > 1;) rep[m][i] = rep[m - 1][i - 1];
        rep[m][0] = 0;
        for (std::size_t i = 0; i < k; ++i) rep[m][i] = (rep[m][i] + carry * top[i]) % p;
    }

    std::vector<Int> cs(k * k * k, Int(0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t m = 0; m < k; ++m) cs[(i * k + j) * k + m] = rep[i + j][m];
    std::vector<Int> unity(k, Int(0));
    unity[0] = 1;
    return build_ring(std::vector<Int>(k, p), cs, unity).ring;
}

ProductRing product_ring(const FiniteRing& a, const FiniteRing& b) {
    std::size_t na = a.ngens(), nb = b.ngens(), n = na + nb;
    std::vector<Int> moduli;
    for (std::size_t i = 0; i < na; ++i) moduli.push_back(a.add().gen_order(i));
    for (std::size_t i = 0; i < nb; ++i) moduli.push_back(b.add().gen_order(i));

    std::vector<Int> cs(n * n * n, Int(0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < na; ++k) cs[(i * n + j) * n + k] = a.c(i, j, k);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                cs[((na + i) * n + na + j) * n + na + k] = b.c(i, j, k);

    std::vector<Int> unity = a.unity();
    unity.insert(unity.end(), b.unity().begin(), b.unity().end());

    BuiltRing built = build_ring(moduli, cs, unity);
    IntMat emb_nat_a(n, na), emb_nat_b(n, nb);
    for (std::size_t i = 0; i < na; ++i) emb_nat_a(i, i) = 1;
    for (std::size_t i = 0; i < nb; ++i) emb_nat_b(na + i, i) = 1;
    return {built.ring,
            reduce_mat(built.ring.add(), built.to_canon * emb_nat_a),
            reduce_mat(built.ring.add(), built.to_canon * emb_nat_b),
            reduce_mat(a.add(), emb_nat_a.transpose() * built.from_canon),
            reduce_mat(b.add(), emb_nat_b.transpose() * built.from_canon)};
}

FiniteRingHom product_proj_a(const ProductRing& p, const FiniteRing& a) {
    return FiniteRingHom(p.ring, a, p.proj_a);
}

FiniteRingHom product_proj_b(const ProductRing& p, const FiniteRing& b) {
    return FiniteRingHom(p.ring, b, p.proj_b);
}

namespace {

FiniteRing ring_from_pairs(const FiniteRing& base,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::size_t nb = base.ngens(), np = pairs.size(), n = np * nb;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pidx;
    for (std::size_t p = 0; p < np; ++p) pidx[pairs[p]] = p;

    std::vector<Int> moduli;
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t m = 0; m < nb; ++m) moduli.push_back(base.add().gen_order(m));

    std::vector<Int> cs(n * n * n, Int(0));
    for (std::size_t p1 = 0; p1 < np; ++p1)
        for (std::size_t p2 = 0; p2 < np; ++p2) {
            if (pairs[p1].second != pairs[p2].first) continue; // e_rs·e_uv = [s=u]·e_rv
            auto it = pidx.find({pairs[p1].first, pairs[p2].second});
            if (it == pidx.end()) continue; // product entry outside the shape
            std::size_t pt = it->second;
            for (std::size_t m1 = 0; m1 < nb; ++m1)
                for (std::size_t m2 = 0; m2 < nb; ++m2)
                    for (std::size_t m3 = 0; m3 < nb; ++m3)
                        cs[((p1 * nb + m1) * n + p2 * nb + m2) * n + pt * nb + m3] =
                            base.c(m1, m2, m3);
        }

    std::vector<Int> unity(n, Int(0));
    for (std::size_t p = 0; p < np; ++p)
        if (pairs[p].first == pairs[p].second)
            for (std::size_t m = 0; m < nb; ++m) unity[p * nb + m] = base.unity()[m];
    return build_ring(moduli, cs, unity).ring;
}

} // namespace

FiniteRing matrix_ring_over(const FiniteRing& base, std::size_t n) {
    if (n < 1) throw BadDefinition("matrix size must be at least 1");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) pairs.emplace_back(r, s);
    return ring_from_pairs(base, pairs);
}

FiniteRing triangular_ring_over(const FiniteRing& base, std::size_t n) {
    if (n < 1) throw BadDefinition("matrix size must be at least 1");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r; s < n; ++s) pairs.emplace_back(r, s);
    return ring_from_pairs(base, pairs);
}

FiniteRing matrix_ring(const Int& q, std::size_t n) {
    if (n < 1) throw BadDefinition("matrix size must be at least 1");
    if (n > 3) throw CapExceeded("matrix size cap is 3");
    return matrix_ring_over(gf(q), n);
}

std::vector<std::vector<Int>> ring_elements(const FiniteRing& e, const Int& cap) {
    return elements(e.add(), cap);
}

std::vector<std::vector<Int>> unit_group(const FiniteRing& e, const Int& cap) {
    UnitData u = unit_scan(e, cap);
    std::vector<std::vector<Int>> out;
    for (std::size_t i : u.unit_idx) out.push_back(u.elts[i]);
    return out;
}

std::vector<std::vector<Int>> jacobson_radical(const FiniteRing& e, const Int& cap) {
    FastRing f(e);
    UnitData u = unit_scan(e, f, cap);
    std::vector<std::vector<Int>> out;
    for (std::size_t yi = 0; yi < u.felts.size(); ++yi) {
        const auto& y = u.felts[yi];
        bool in_radical = true;
        for (const auto& x : u.felts) {
            std::vector<long> xy = f.product(x, y);
            for (const auto& z : u.felts) {
                if (!u.unit_set.count(f.sub(f.unity, f.product(xy, z)))) {
                    in_radical = false;
                    break;
                }
            }
            if (!in_radical) break;
        }
        if (in_radical) out.push_back(u.elts[yi]);
    }
    return out;
}

Subgroup centre(const FiniteRing& e) {
    std::size_t n = e.ngens();
    IntMat m(n * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        IntMat d = left_mult(e, i) - right_mult(e, i);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) m(i * n + k, j) = d(k, j);
    }
    IntMat dmod(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            dmod(i * n + k, i * n + k) = e.add().gen_order(k);
    IntMat ker = kernel_basis(hstack(m, Int(-1) * dmod));
    IntMat gens = hstack(ker.sub(0, 0, n, ker.cols()), e.add().relation_matrix());
    return subgroup_from_generators(e.add(), gens);
}

UnitIsogenyReport check_unit_isogeny(const FiniteRingHom& h, const Int& cap) {
    AbHom ab(h.src().add(), h.dst().add(), h.mat());
    IsogenyCertificate cert = hom_certify(ab);

    FastRing fd(h.dst());
    UnitData us = unit_scan(h.src(), cap);
    UnitData ud = unit_scan(h.dst(), fd, cap);

    Int ker = 0;
    std::set<std::vector<long>> image;
    for (std::size_t i : us.unit_idx) {
        std::vector<long> img = fd.to_fast(h.apply(us.elts[i]));
        if (!ud.unit_set.count(img))
            throw PreconditionError("unit image is not a unit"); // cannot happen
        if (img == fd.unity) ++ker;
        image.insert(std::move(img));
    }

    UnitIsogenyReport rep;
    rep.ring_index = cert.index;
    rep.unit_ker_order = ker;
    rep.unit_image_index = Int(ud.unit_idx.size()) / Int(image.size());
    rep.ring_surjective = cert.coker_order == 1;
    rep.unit_surjective = image.size() == ud.unit_idx.size();
    rep.unit_map_isogeny = rep.unit_ker_order > 0 && rep.unit_image_index > 0;
    rep.surjectivity_preserved = !rep.ring_surjective || rep.unit_surjective;
    return rep;
}

Int unit_quotient_exponent(const FiniteRing& b, const Int& cap) {
    FastRing f(b);
    UnitData u = unit_scan(b, f, cap);
    std::size_t n = b.ngens();

    auto central = [&](const std::vector<long>& x) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<long> ei(n, 0);
            ei[i] = 1;
            if (f.product(x, ei) != f.product(ei, x)) return false;
        }
        return true;
    };

    std::set<std::vector<long>> gens;
    for (std::size_t i : u.unit_idx)
        if (central(u.felts[i])) gens.insert(u.felts[i]);
    for (std::size_t i : u.unit_idx)
        for (std::size_t j : u.unit_idx) {
            const auto& x = u.felts[i];
            const auto& y = u.felts[j];
            std::vector<long> comm = f.product(
                f.product(f.product(x, y), u.felts[u.inv_of[i]]), u.felts[u.inv_of[j]]);
            gens.insert(std::move(comm));
        }

    std::set<std::vector<long>> h;
    std::vector<std::vector<long>> frontier{f.unity};
    h.insert(f.unity);
    while (!frontier.empty()) {
        std::vector<long> cur = std::move(frontier.back());
        frontier.pop_back();
        for (const auto& g : gens) {
            std::vector<long> p = f.product(cur, g);
            if (h.insert(p).second) frontier.push_back(std::move(p));
        }
    }

    Int result = 1;
    Int bound = Int(u.unit_idx.size()) + 1;
    for (std::size_t i : u.unit_idx) {
        std::vector<long> cur = u.felts[i];
        Int order = 1;
        while (!h.count(cur)) {
            cur = f.product(cur, u.felts[i]);
            ++order;
            if (order > bound)
                throw PreconditionError("unit power never entered the subgroup");
        }
        result = lcm(result, order);
    }
    return result;
}

Subgroup ideal_from_generators(const FiniteRing& e, const IntMat& gens) {
    std::size_t n = e.ngens();
    if (gens.rows() != n) throw BadDefinition("generator coordinate count mismatch");
    Subgroup s = subgroup_from_generators(e.add(), gens);
    for (;;) {
        IntMat cur = reduce_mat(e.add(), s.incl.mat());
        IntMat aug = cur;
        for (std::size_t i = 0; i < n; ++i) {
            aug = hstack(aug, reduce_mat(e.add(), left_mult(e, i) * cur));
            aug = hstack(aug, reduce_mat(e.add(), right_mult(e, i) * cur));
        }
        Subgroup closed = subgroup_from_generators(e.add(), aug);
        if (closed.grp.order() == s.grp.order()) return s;
        s = std::move(closed);
    }
}

RingQuotient quotient_ring(const FiniteRing& e, const IntMat& ideal_gens) {
    std::size_t n = e.ngens();
    Subgroup idl = ideal_from_generators(e, ideal_gens);
    Quotient qt = quotient_by_generators(e.add(), idl.incl.mat());
    const IntMat& p = qt.proj.mat();
    std::size_t q = qt.grp.ngens();

    // sections of the projection: lift each quotient generator
    IntMat a = hstack(p, qt.grp.relation_matrix());
    std::vector<std::vector<Int>> sec;
    for (std::size_t k = 0; k < q; ++k) {
        IntMat ek(q, 1);
        ek(k, 0) = 1;
        std::optional<IntMat> w = solve_integer(a, ek);
        if (!w) throw PreconditionError("projection admits no section");
        std::vector<Int> lift(n);
        for (std::size_t i = 0; i < n; ++i) lift[i] = (*w)(i, 0);
        sec.push_back(reduce_vec(e.add(), std::move(lift)));
    }

    std::vector<Int> cs(q * q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<Int> img = reduce_vec(qt.grp, matvec(p, e.product(sec[i], sec[j])));
            for (std::size_t k = 0; k < q; ++k) cs[(i * q + j) * q + k] = img[k];
        }
    FiniteRing rq(qt.grp, std::move(cs), matvec(p, e.unity()));
    FiniteRingHom proj(e, rq, p);
    return {std::move(rq), std::move(proj)};
}

std::vector<FiniteRingHom> theorem_o_catalog() {
    std::vector<FiniteRingHom> cat;
    auto one = [](long v) { return IntMat(1, 1, {Int(v)}); };

    // quotient chains Z/p^k -> Z/p^j
    cat.emplace_back(zmod(4), zmod(2), one(1));
    cat.emplace_back(zmod(8), zmod(4), one(1));
    cat.emplace_back(zmod(8), zmod(2), one(1));
    cat.emplace_back(zmod(9), zmod(3), one(1));
    cat.emplace_back(zmod(27), zmod(9), one(1));
    cat.emplace_back(zmod(12), zmod(6), one(1));

    // CRT isomorphisms onto canonicalized products
    ProductRing p23 = product_ring(zmod(2), zmod(3));
    ProductRing p43 = product_ring(zmod(4), zmod(3));
    cat.emplace_back(zmod(6), p23.ring, p23.emb_a + p23.emb_b);
    cat.emplace_back(zmod(12), p43.ring, p43.emb_a + p43.emb_b);

    // diagonal embeddings into square products
    ProductRing p22 = product_ring(zmod(2), zmod(2));
    ProductRing p33 = product_ring(zmod(3), zmod(3));
    ProductRing p99 = product_ring(zmod(9), zmod(9));
    cat.emplace_back(zmod(2), p22.ring, p22.emb_a + p22.emb_b);
    cat.emplace_back(zmod(3), p33.ring, p33.emb_a + p33.emb_b);
    cat.emplace_back(zmod(9), p99.ring, p99.emb_a + p99.emb_b);

    // product projections
    cat.push_back(product_proj_a(p23, zmod(2)));
    cat.push_back(product_proj_b(p23, zmod(3)));

    // subrings of M_2(Z/4): scalars, diagonal, upper-triangular
    FiniteRing m2z4 = matrix_ring_over(zmod(4), 2);
    FiniteRing ut4 = triangular_ring_over(zmod(4), 2);
    ProductRing p44 = product_ring(zmod(4), zmod(4));
    cat.emplace_back(zmod(4), m2z4, IntMat(4, 1, {Int(1), Int(0), Int(0), Int(1)}));
    cat.emplace_back(p44.ring, m2z4,
                     IntMat(4, 2, {Int(1), Int(0), Int(0), Int(0), Int(0), Int(0), Int(0), Int(1)}));
    cat.emplace_back(ut4, m2z4,
                     IntMat(4, 3, {Int(1), Int(0), Int(0), Int(0), Int(1), Int(0), Int(0), Int(0),
                                   Int(0), Int(0), Int(0), Int(1)}));

    // diagonal-entry projections off the triangular rings
    cat.emplace_back(ut4, p44.ring,
                     IntMat(2, 3, {Int(1), Int(0), Int(0), Int(0), Int(0), Int(1)}));
    FiniteRing ut2 = triangular_ring_over(gf(Int(2)), 2);
    cat.emplace_back(ut2, p22.ring,
                     IntMat(2, 3, {Int(1), Int(0), Int(0), Int(0), Int(0), Int(1)}));

    // entrywise reduction and an identity
    FiniteRing m2f2 = matrix_ring(Int(2), 2);
    cat.emplace_back(m2z4, m2f2, IntMat::identity(4));
    cat.push_back(FiniteRingHom::identity(m2f2));

    // F_4 -> M_2(F_2) by the companion matrix of t²+t+1
    cat.emplace_back(gf(Int(4)), m2f2,
                     IntMat(4, 2, {Int(1), Int(0), Int(0), Int(1), Int(0), Int(1), Int(1), Int(1)}));
    return cat;
}

std::vector<RadicalIdealCase> radical_ideal_catalog() {
    std::vector<RadicalIdealCase> cat;
    cat.push_back({zmod(4), IntMat(1, 1, {Int(2)})});
    cat.push_back({zmod(8), IntMat(1, 1, {Int(2)})});
    cat.push_back({zmod(8), IntMat(1, 1, {Int(4)})});
    cat.push_back({zmod(9), IntMat(1, 1, {Int(3)})});

    FiniteRing ut2 = triangular_ring_over(gf(Int(2)), 2);
    cat.push_back({ut2, IntMat(3, 1, {Int(0), Int(1), Int(0)})});

    FiniteRing ut4 = triangular_ring_over(zmod(4), 2);
    cat.push_back({ut4, IntMat(3, 1, {Int(0), Int(1), Int(0)})});
    cat.push_back({ut4, IntMat(3, 3, {Int(2), Int(0), Int(0), Int(0), Int(1), Int(0), Int(0),
                                      Int(0), Int(2)})});

    FiniteRing m2z4 = matrix_ring_over(zmod(4), 2);
    cat.push_back({m2z4, Int(2) * IntMat::identity(4)});
    return cat;
}

bool lemma_j_check(const FiniteRing& e, const IntMat& ideal_gens, const Int& cap) {
    std::vector<std::vector<Int>> rad = jacobson_radical(e, cap);
    std::set<std::vector<Int>> radset(rad.begin(), rad.end());

    Subgroup idl = ideal_from_generators(e, ideal_gens);
    for (const auto& x : elements(idl.grp, cap))
        if (!radset.count(reduce_vec(e.add(), matvec(idl.incl.mat(), x)))) return false;

    RingQuotient q = quotient_ring(e, ideal_gens);
    UnitIsogenyReport rep = check_unit_isogeny(q.proj, cap);
    return rep.ring_surjective && rep.unit_surjective && rep.unit_map_isogeny;
}

} // namespace commidx
