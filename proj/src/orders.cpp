#include "commidx/orders.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace commidx {

// --- FiniteGroup ------------------------------------------------------------

FiniteGroup::FiniteGroup(std::size_t order, std::vector<std::size_t> table,
                         std::vector<std::size_t> generators,
                         std::vector<std::vector<std::size_t>> perms)
    : order_(order), table_(std::move(table)), generators_(std::move(generators)),
      perms_(std::move(perms)) {
    if (order_ == 0 || table_.size() != order_ * order_)
        throw BadDefinition("group table must be order × order");
    for (std::size_t x : table_)
        if (x >= order_) throw BadDefinition("group table entry out of range");

    bool found = false;
    for (std::size_t e = 0; e < order_; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < order_ && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            identity_ = e;
            found = true;
            break;
        }
    }
    if (!found) throw BadDefinition("group table has no identity");
    for (std::size_t x = 0; x < order_; ++x) {
        bool inv = false;
        for (std::size_t y = 0; y < order_ && !inv; ++y)
            inv = mul(x, y) == identity_ && mul(y, x) == identity_;
        if (!inv) throw BadDefinition("group table has a non-invertible element");
    }
    for (std::size_t i = 0; i < order_; ++i)
        for (std::size_t j = 0; j < order_; ++j)
            for (std::size_t k = 0; k < order_; ++k)
                if (mul(mul(i, j), k) != mul(i, mul(j, k)))
                    throw BadDefinition("group table is not associative");

    for (std::size_t g : generators_)
        if (g >= order_) throw BadDefinition("generator index out of range");

    if (!perms_.empty()) {
        if (perms_.size() != order_) throw BadDefinition("need one permutation per element");
        std::size_t d = perms_[0].size();
        for (const auto& p : perms_) {
            if (p.size() != d) throw BadDefinition("permutations must share a degree");
            std::vector<bool> seen(d, false);
            for (std::size_t x : p) {
                if (x >= d || seen[x]) throw BadDefinition("not a permutation");
                seen[x] = true;
            }
        }
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j < order_; ++j)
                for (std::size_t x = 0; x < d; ++x)
                    if (perms_[i][perms_[j][x]] != perms_[mul(i, j)][x])
                        throw BadDefinition("permutations do not respect the table");
    }
}

std::size_t FiniteGroup::inverse(std::size_t i) const {
    for (std::size_t j = 0; j < order_; ++j)
        if (mul(i, j) == identity_) return j;
    return order_; // unreachable: validated at construction
}

FiniteGroup trivial_group() { return FiniteGroup(1, {0}, {}, {{0}}); }

FiniteGroup cyclic_group(std::size_t n) {
    if (n == 0) throw BadDefinition("cyclic group needs n ≥ 1");
    std::vector<std::size_t> table(n * n);
    std::vector<std::vector<std::size_t>> perms(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            table[i * n + j] = (i + j) % n;
            perms[i][j] = (i + j) % n;
        }
    std::vector<std::size_t> gens;
    if (n > 1) gens.push_back(1);
    return FiniteGroup(n, std::move(table), std::move(gens), std::move(perms));
}

FiniteGroup symmetric_group(std::size_t n) {
    if (n == 0 || n > 5) throw BadDefinition("symmetric group supported for 1 ≤ n ≤ 5");
    std::vector<std::vector<std::size_t>> ps;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        ps.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::size_t ord = ps.size();
    auto idx = [&](const std::vector<std::size_t>& q) {
        return static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), q) - ps.begin());
    };
    std::vector<std::size_t> table(ord * ord);
    for (std::size_t i = 0; i < ord; ++i)
        for (std::size_t j = 0; j < ord; ++j) {
            std::vector<std::size_t> comp(n);
            for (std::size_t x = 0; x < n; ++x) comp[x] = ps[i][ps[j][x]];
            table[i * ord + j] = idx(comp);
        }
    std::vector<std::size_t> gens;
    if (n >= 2) {
        std::vector<std::size_t> tr(n), cyc(n);
        std::iota(tr.begin(), tr.end(), 0);
        std::swap(tr[0], tr[1]);
        for (std::size_t x = 0; x < n; ++x) cyc[x] = (x + 1) % n;
        gens = {idx(tr), idx(cyc)};
    }
    return FiniteGroup(ord, std::move(table), std::move(gens), std::move(ps));
}

// --- ZOrder -----------------------------------------------------------------

ZOrder::ZOrder(std::size_t zrank, std::vector<Int> structure, std::vector<Int> unity)
    : n_(zrank), structure_(std::move(structure)), unity_(std::move(unity)) {
    if (n_ == 0) throw BadDefinition("order must have positive rank");
    if (structure_.size() != n_ * n_ * n_ || unity_.size() != n_)
        throw BadDefinition("structure constants must be zrank³, unity zrank");
    // A_i A_j = Σ_k c_ijk A_k for the left-regular matrices ⟺ associativity.
    std::vector<IntMat> reg(n_);
    for (std::size_t i = 0; i < n_; ++i) reg[i] = left_regular(i);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            IntMat lhs = reg[i] * reg[j];
            IntMat rhs(n_, n_);
            for (std::size_t k = 0; k < n_; ++k)
                if (c(i, j, k) != 0) rhs = rhs + c(i, j, k) * reg[k];
            if (!(lhs == rhs)) throw BadDefinition("structure constants are not associative");
        }
    IntMat lu(n_, n_), ru(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (unity_[i] != 0) lu = lu + unity_[i] * reg[i];
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                if (unity_[j] != 0 && c(i, j, k) != 0) ru(k, i) += unity_[j] * c(i, j, k);
    }
    if (!lu.is_identity() || !ru.is_identity())
        throw BadDefinition("unity is not a two-sided identity");
}

IntMat ZOrder::left_regular(std::size_t i) const {
    IntMat a(n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) a(k, j) = c(i, j, k);
    return a;
}

std::vector<Int> ZOrder::product(const std::vector<Int>& x, const std::vector<Int>& y) const {
    std::vector<Int> z(n_, Int(0));
    for (std::size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            for (std::size_t k = 0; k < n_; ++k) z[k] += x[i] * y[j] * c(i, j, k);
        }
    }
    return z;
}

ZOrder group_ring(const FiniteGroup& g) {
    std::size_t n = g.order();
    std::vector<Int> structure(n * n * n, Int(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) structure[(i * n + j) * n + g.mul(i, j)] = 1;
    std::vector<Int> unity(n, Int(0));
    unity[g.identity()] = 1;
    return ZOrder(n, std::move(structure), std::move(unity));
}

ZOrder upper_triangular_order(std::size_t n) {
    if (n == 0) throw BadDefinition("upper triangular order needs n ≥ 1");
    std::vector<std::pair<std::size_t, std::size_t>> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) basis.emplace_back(i, j);
    std::size_t r = basis.size();
    auto idx = [&](std::size_t i, std::size_t j) {
        return static_cast<std::size_t>(
            std::lower_bound(basis.begin(), basis.end(), std::make_pair(i, j)) - basis.begin());
    };
    std::vector<Int> structure(r * r * r, Int(0));
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            auto [i, j] = basis[a];
            auto [k, l] = basis[b];
            if (j == k) structure[(a * r + b) * r + idx(i, l)] = 1;
        }
    std::vector<Int> unity(r, Int(0));
    for (std::size_t i = 0; i < n; ++i) unity[idx(i, i)] = 1;
    return ZOrder(r, std::move(structure), std::move(unity));
}

bool is_semisimple(const ZOrder& r) {
    std::size_t n = r.zrank();
    std::vector<IntMat> reg(n);
    for (std::size_t i = 0; i < n; ++i) reg[i] = r.left_regular(i);
    IntMat t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMat p = reg[i] * reg[j];
            Int tr = 0;
            for (std::size_t k = 0; k < n; ++k) tr += p(k, k);
            t(i, j) = tr;
        }
    return det(t) != 0;
}

// --- OrderLattice -----------------------------------------------------------

OrderLattice::OrderLattice(ZOrder order, std::vector<IntMat> action)
    : order_(std::move(order)), action_(std::move(action)) {
    std::size_t n = order_.zrank();
    if (action_.size() != n) throw BadDefinition("need one action matrix per order basis element");
    m_ = action_.empty() ? 0 : action_[0].rows();
    for (const auto& a : action_)
        if (a.rows() != m_ || a.cols() != m_)
            throw BadDefinition("action matrices must be square of equal size");
    if (!act(order_.unity()).is_identity())
        throw BadDefinition("unity must act as the identity");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMat lhs = action_[i] * action_[j];
            IntMat rhs(m_, m_);
            for (std::size_t k = 0; k < n; ++k)
                if (order_.c(i, j, k) != 0) rhs = rhs + order_.c(i, j, k) * action_[k];
            if (!(lhs == rhs)) throw BadDefinition("action does not respect the multiplication");
        }
}

IntMat OrderLattice::act(const std::vector<Int>& x) const {
    IntMat r(m_, m_);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) r = r + x[i] * action_[i];
    return r;
}

OrderLattice regular_lattice(const ZOrder& r) {
    std::vector<IntMat> action(r.zrank());
    for (std::size_t i = 0; i < r.zrank(); ++i) action[i] = r.left_regular(i);
    return OrderLattice(r, std::move(action));
}

OrderLattice permutation_lattice(const FiniteGroup& g) {
    if (g.perms().empty()) throw BadDefinition("group carries no permutation data");
    std::size_t d = g.perms()[0].size();
    std::vector<IntMat> action(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) {
        IntMat p(d, d);
        for (std::size_t j = 0; j < d; ++j) p(g.perms()[i][j], j) = 1;
        action[i] = p;
    }
    return OrderLattice(group_ring(g), std::move(action));
}

OrderLattice one_dim_lattice(const ZOrder& r, const std::vector<Int>& chi) {
    if (chi.size() != r.zrank()) throw BadDefinition("need one character value per basis element");
    std::vector<IntMat> action(r.zrank());
    for (std::size_t i = 0; i < r.zrank(); ++i) action[i] = IntMat(1, 1, {chi[i]});
    return OrderLattice(r, std::move(action));
}

OrderLattice direct_sum(const OrderLattice& a, const OrderLattice& b) {
    if (!(a.order() == b.order())) throw ObjectMismatch("direct sum needs a common order");
    std::size_t ma = a.zrank(), mb = b.zrank();
    std::vector<IntMat> action(a.order().zrank());
    for (std::size_t i = 0; i < action.size(); ++i) {
        IntMat blk(ma + mb, ma + mb);
        for (std::size_t r = 0; r < ma; ++r)
            for (std::size_t c = 0; c < ma; ++c) blk(r, c) = a.action()[i](r, c);
        for (std::size_t r = 0; r < mb; ++r)
            for (std::size_t c = 0; c < mb; ++c) blk(ma + r, ma + c) = b.action()[i](r, c);
        action[i] = blk;
    }
    return OrderLattice(a.order(), std::move(action));
}

OrderLattice sublattice(const OrderLattice& l, const IntMat& basis) {
    if (!basis.is_square() || basis.rows() != l.zrank())
        throw NotASublattice("basis must be square of the lattice rank");
    if (det(basis) == 0) throw NotASublattice("basis must be nonsingular");
    std::vector<IntMat> action(l.action().size());
    for (std::size_t i = 0; i < action.size(); ++i) {
        auto n = solve_integer(basis, l.action()[i] * basis);
        if (!n) throw NotASublattice("basis is not stable under the action");
        action[i] = *n;
    }
    return OrderLattice(l.order(), std::move(action));
}

IntMat right_mult_matrix(const ZOrder& r, const std::vector<Int>& x) {
    if (x.size() != r.zrank()) throw BadDefinition("coordinate vector of wrong length");
    std::size_t n = r.zrank();
    IntMat m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) m(k, j) += x[i] * r.c(j, i, k);
        }
    return m;
}

// --- LatHom -----------------------------------------------------------------

LatHom::LatHom(OrderLattice src, OrderLattice dst, IntMat mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {
    if (!(src_.order() == dst_.order())) throw ObjectMismatch("lattices over different orders");
    if (mat_.rows() != dst_.zrank() || mat_.cols() != src_.zrank())
        throw BadDefinition("matrix shape does not match the lattices");
    for (std::size_t i = 0; i < src_.action().size(); ++i)
        if (!(mat_ * src_.action()[i] == dst_.action()[i] * mat_))
            throw BadDefinition("matrix does not intertwine the actions");
}

LatHom LatHom::identity(const OrderLattice& l) {
    return LatHom(l, l, IntMat::identity(l.zrank()));
}

LatHom compose(const LatHom& g, const LatHom& f) {
    if (!(f.dst() == g.src())) throw ObjectMismatch("maps are not composable");
    return LatHom(f.src(), g.dst(), g.mat() * f.mat());
}

// --- commutants -------------------------------------------------------------

namespace {

// Z-basis of {ψ (mw×mv) : ψ·A^V_i = A^W_i·ψ for all i}, via one kernel computation.
std::vector<IntMat> intertwiner_basis(const std::vector<IntMat>& av, std::size_t mv,
                                      const std::vector<IntMat>& aw, std::size_t mw) {
    std::size_t unknowns = mw * mv;
    IntMat big(av.size() * unknowns, unknowns);
    for (std::size_t t = 0; t < av.size(); ++t)
        for (std::size_t r = 0; r < mw; ++r)
            for (std::size_t s = 0; s < mv; ++s) {
                std::size_t row = t * unknowns + r * mv + s;
                // (ψA − Aψ)_{rs}: coefficient of ψ_{uv} is [u=r]A^V(v,s) − [v=s]A^W(r,u).
                for (std::size_t v = 0; v < mv; ++v) big(row, r * mv + v) += av[t](v, s);
                for (std::size_t u = 0; u < mw; ++u) big(row, u * mv + s) -= aw[t](r, u);
            }
    IntMat k = kernel_basis(big);
    std::vector<IntMat> out;
    out.reserve(k.cols());
    for (std::size_t c = 0; c < k.cols(); ++c) {
        IntMat m(mw, mv);
        for (std::size_t u = 0; u < mw; ++u)
            for (std::size_t v = 0; v < mv; ++v) m(u, v) = k(u * mv + v, c);
        out.push_back(std::move(m));
    }
    return out;
}

// Coordinates of rational matrices in an integral matrix basis (flattened solve).
RatMat coords_in(const std::vector<IntMat>& basis, const std::vector<RatMat>& elts) {
    std::size_t dim = basis.empty() ? 0 : basis[0].rows() * basis[0].cols();
    RatMat bl(dim, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t u = 0; u < basis[j].rows(); ++u)
            for (std::size_t v = 0; v < basis[j].cols(); ++v)
                bl(u * basis[j].cols() + v, j) = Rat(basis[j](u, v));
    RatMat rhs(dim, elts.size());
    for (std::size_t j = 0; j < elts.size(); ++j)
        for (std::size_t u = 0; u < elts[j].rows(); ++u)
            for (std::size_t v = 0; v < elts[j].cols(); ++v)
                rhs(u * elts[j].cols() + v, j) = elts[j](u, v);
    auto y = solve(bl, rhs);
    if (!y) throw NotInCommutant("element does not lie in the rational commutant");
    return *y;
}

// For Λ' with rational coordinate matrix y inside E ≅ Z^n:
// returns { (Λ' : Λ'∩Z^n), (Z^n : Λ'∩Z^n) }.
std::pair<Rat, Rat> overlap_indices(const RatMat& y) {
    std::size_t n = y.rows();
    if (y.cols() != n) throw RankMismatch("commutant ranks differ");
    Int d = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d = lcm(d, denominator(y(i, j)));
    IntMat yi = *to_int(Rat(d) * y);
    IntMat di = d * IntMat::identity(n);
    IntMat k = lattice_intersect(di, yi);
    return {lattice_index(yi, k), lattice_index(di, k)};
}

} // namespace

CommutantLattice end_lattice(const OrderLattice& l) {
    auto basis = intertwiner_basis(l.action(), l.zrank(), l.action(), l.zrank());
    IntMat coords = IntMat::identity(basis.size());
    return {l.zrank(), std::move(basis), std::move(coords)};
}

std::vector<IntMat> hom_lattice(const OrderLattice& src, const OrderLattice& dst) {
    if (!(src.order() == dst.order())) throw ObjectMismatch("lattices over different orders");
    return intertwiner_basis(src.action(), src.zrank(), dst.action(), dst.zrank());
}

bool commensurable(const OrderLattice& l, const OrderLattice& m) {
    if (!(l.order() == m.order())) throw ObjectMismatch("lattices over different orders");
    if (!is_semisimple(l.order())) throw OrderNotSemisimple("rational algebra is not semisimple");
    std::size_t h = hom_lattice(l, m).size();
    std::size_t e1 = end_lattice(l).ambient_dim();
    std::size_t e2 = end_lattice(m).ambient_dim();
    return l.zrank() == m.zrank() && h == e1 && e1 == e2;
}

Rat ie_self(const OrderLattice& l, const RatMat& alpha) {
    std::size_t m = l.zrank();
    if (alpha.rows() != m || alpha.cols() != m)
        throw BadDefinition("alpha must match the lattice rank");
    if (det(alpha) == 0) throw SingularMatrix("alpha must be invertible");
    for (const auto& a : l.action())
        if (!(alpha * to_rat(a) == to_rat(a) * alpha))
            throw NotInCommutant("alpha does not commute with the action");
    CommutantLattice e = end_lattice(l);
    RatMat ainv = inverse(alpha);
    std::vector<RatMat> conj_a, conj_ainv;
    for (const auto& b : e.qbasis) {
        conj_a.push_back(alpha * to_rat(b) * ainv);    // basis of E_{αL}
        conj_ainv.push_back(ainv * to_rat(b) * alpha); // basis of E_{α⁻¹L}
    }
    Rat num = overlap_indices(coords_in(e.qbasis, conj_a)).second;
    Rat den = overlap_indices(coords_in(e.qbasis, conj_ainv)).second;
    return num / den;
}

Rat ie_via_phi(const OrderLattice& l, const OrderLattice& m, const RatMat& phi) {
    if (!(l.order() == m.order())) throw ObjectMismatch("lattices over different orders");
    if (phi.rows() != m.zrank() || phi.cols() != l.zrank() || l.zrank() != m.zrank())
        throw RankMismatch("phi must be square across equal lattice ranks");
    if (det(phi) == 0) throw SingularMatrix("phi must be invertible");
    for (std::size_t i = 0; i < l.action().size(); ++i)
        if (!(phi * to_rat(l.action()[i]) == to_rat(m.action()[i]) * phi))
            throw NotInCommutant("phi is not a module map");
    CommutantLattice el = end_lattice(l);
    CommutantLattice em = end_lattice(m);
    RatMat pinv = inverse(phi);
    std::vector<RatMat> conj;
    for (const auto& b : em.qbasis) conj.push_back(pinv * to_rat(b) * phi); // basis of E_{M'}
    auto [num, den] = overlap_indices(coords_in(el.qbasis, conj));
    return num / den;
}

RatMat choose_iso(const OrderLattice& l, const OrderLattice& m, std::size_t k) {
    if (l.zrank() != m.zrank()) throw NotCommensurable("lattice ranks differ");
    auto basis = hom_lattice(l, m);
    if (basis.empty()) throw NotCommensurable("no nonzero module maps");
    std::size_t h = basis.size();
    std::size_t hits = 0;
    // Shells of increasing sup-norm; within a shell, odometer order with
    // coefficients ascending from -t to t; sign-normalized (first nonzero > 0).
    for (long t = 1; t <= 8; ++t) {
        std::vector<long> c(h, -t);
        while (true) {
            bool on_shell = false;
            for (long x : c) on_shell = on_shell || x == t || x == -t;
            if (on_shell) {
                long lead = 0;
                for (long x : c)
                    if (x != 0) {
                        lead = x;
                        break;
                    }
                if (lead > 0) {
                    IntMat phi(m.zrank(), l.zrank());
                    for (std::size_t i = 0; i < h; ++i)
                        if (c[i] != 0) phi = phi + Int(c[i]) * basis[i];
                    if (det(phi) != 0) {
                        if (hits == k) return to_rat(phi);
                        ++hits;
                    }
                }
            }
            std::size_t i = h;
            while (i > 0 && c[i - 1] == t) c[--i] = -t;
            if (i == 0) break;
            ++c[i - 1];
        }
    }
    throw CapExceeded("no invertible combination of module maps found");
}

Rat ie_pair(const OrderLattice& l, const OrderLattice& m, std::size_t phi_choice) {
    if (!commensurable(l, m)) throw NotCommensurable("lattices are not rationally isomorphic");
    return ie_via_phi(l, m, choose_iso(l, m, phi_choice));
}

// --- lattice correspondence context -----------------------------------------

IsogenyCheck LatticeCtx::check(const Map& f) {
    bool ker_finite = kernel_basis(f.mat()).cols() == 0;
    auto d = snf(f.mat()).d;
    std::size_t rank = 0;
    Int coker = 1;
    for (const Int& x : d)
        if (x != 0) {
            ++rank;
            coker *= abs(x);
        }
    bool coker_finite = rank == f.dst().zrank();
    IsogenyCheck out{ker_finite, coker_finite, std::nullopt};
    if (ker_finite && coker_finite)
        out.cert = IsogenyCertificate{Int(1), coker, Rat(coker)};
    return out;
}

LatticeCtx::Pullback LatticeCtx::fibre_product(const Map& f, const Map& h) {
    if (!(f.dst() == h.dst())) throw ObjectMismatch("fibre product needs a common target");
    std::size_t a = f.src().zrank(), b = h.src().zrank();
    IntMat t = col_basis(kernel_basis(hstack(f.mat(), Int(-1) * h.mat())));
    const ZOrder& ord = f.src().order();
    std::vector<IntMat> action(ord.zrank());
    for (std::size_t i = 0; i < ord.zrank(); ++i) {
        IntMat blk(a + b, a + b);
        for (std::size_t r = 0; r < a; ++r)
            for (std::size_t c = 0; c < a; ++c) blk(r, c) = f.src().action()[i](r, c);
        for (std::size_t r = 0; r < b; ++r)
            for (std::size_t c = 0; c < b; ++c) blk(a + r, a + c) = h.src().action()[i](r, c);
        auto n = solve_integer(t, blk * t);
        if (!n) throw PreconditionError("fibre product basis not action-stable");
        action[i] = *n;
    }
    OrderLattice apex(ord, std::move(action));
    LatHom p0(apex, f.src(), t.sub(0, 0, a, t.cols()));
    LatHom p1(apex, h.src(), t.sub(a, 0, b, t.cols()));
    return {std::move(apex), std::move(p0), std::move(p1), std::move(t)};
}

LatticeCtx::Map LatticeCtx::mediate(const Pullback& pb, const Map& u, const Map& v) {
    if (!(u.src() == v.src())) throw ObjectMismatch("mediating maps need a common source");
    if (!(u.dst() == pb.p0.dst()) || !(v.dst() == pb.p1.dst()))
        throw ObjectMismatch("mediating maps must target the pullback factors");
    auto z = solve_integer(pb.t, vstack(u.mat(), v.mat()));
    if (!z) throw PreconditionError("maps do not factor through the fibre product");
    return LatHom(u.src(), pb.apex, *z);
}

SampledCommensurability sample_self_commensurability(const OrderLattice& l, const Int& seed) {
    Rng rng((abs(seed) & Int("0xffffffffffffffff")).convert_to<std::uint64_t>());
    CommutantLattice e = end_lattice(l);
    std::size_t m = l.zrank();
    for (int tries = 0; tries < 1000; ++tries) {
        IntMat alpha(m, m);
        for (const auto& b : e.qbasis) {
            long c = rng.pick(-3, 3);
            if (c != 0) alpha = alpha + Int(c) * b;
        }
        if (m > 0 && det(alpha) == 0) continue;
        // α integral ⟹ αL ⊆ L, so L ∩ α⁻¹L has basis D⁻¹·(D·Z^m ∩ D·α⁻¹·Z^m).
        RatMat ainv = m > 0 ? inverse(to_rat(alpha)) : RatMat(0, 0);
        Int d = 1;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) d = lcm(d, denominator(ainv(i, j)));
        IntMat k = lattice_intersect(d * IntMat::identity(m), *to_int(Rat(d) * ainv));
        IntMat basis(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) basis(i, j) = k(i, j) / d;
        OrderLattice w = sublattice(l, basis);
        LatHom incl(w, l, basis);
        LatHom mult(w, l, alpha * basis);
        return {Correspondence<LatticeCtx>(std::move(w), std::move(incl), std::move(mult)),
                std::move(alpha)};
    }
    throw CapExceeded("no invertible commutant element after 1000 draws");
}

bool lemma_p_check(const OrderLattice& l, const Int& m) {
    if (m == 0) throw BadDefinition("m must be nonzero");
    Rat quotient_order = lattice_index(IntMat::identity(l.zrank()),
                                       m * IntMat::identity(l.zrank()));
    Rat expected = 1;
    for (std::size_t i = 0; i < l.zrank(); ++i) expected *= Rat(abs(m));
    return quotient_order == expected;
}

// --- finite modules ----------------------------------------------------------

FiniteModule::FiniteModule(ZOrder order, FgAbGroup grp, std::vector<IntMat> action)
    : order_(std::move(order)), grp_(std::move(grp)), action_(std::move(action)) {
    if (grp_.rank() != 0) throw BadDefinition("finite module needs a rank-0 group");
    if (action_.size() != order_.zrank())
        throw BadDefinition("need one action matrix per order basis element");
    for (auto& a : action_) a = AbHom(grp_, grp_, a).mat(); // well-definedness + reduction
    std::size_t n = grp_.ngens();
    IntMat u(n, n);
    for (std::size_t i = 0; i < order_.zrank(); ++i)
        if (order_.unity()[i] != 0) u = u + order_.unity()[i] * action_[i];
    if (!(reduce_mat(grp_, u) == reduce_mat(grp_, IntMat::identity(n))))
        throw BadDefinition("unity must act as the identity");
    for (std::size_t i = 0; i < order_.zrank(); ++i)
        for (std::size_t j = 0; j < order_.zrank(); ++j) {
            IntMat rhs(n, n);
            for (std::size_t k = 0; k < order_.zrank(); ++k)
                if (order_.c(i, j, k) != 0) rhs = rhs + order_.c(i, j, k) * action_[k];
            if (!(reduce_mat(grp_, action_[i] * action_[j]) == reduce_mat(grp_, rhs)))
                throw BadDefinition("action does not respect the multiplication");
        }
}

MixedModule::MixedModule(OrderLattice f, FiniteModule t)
    : free_part(std::move(f)), tors_part(std::move(t)) {
    if (!(free_part.order() == tors_part.order()))
        throw ObjectMismatch("parts live over different orders");
}

MixedModule mixed_module(const ZOrder& r, const FgAbGroup& grp,
                         const std::vector<IntMat>& action) {
    std::size_t t = grp.ntors(), fr = grp.rank();
    std::vector<IntMat> free_blocks(action.size()), tors_blocks(action.size());
    for (std::size_t i = 0; i < action.size(); ++i) {
        const IntMat& a = action[i];
        if (a.rows() != t + fr || a.cols() != t + fr)
            throw BadDefinition("action matrices must match the generator count");
        for (std::size_t u = 0; u < t + fr; ++u)
            for (std::size_t v = 0; v < t + fr; ++v)
                if ((u < t) != (v < t) && a(u, v) != 0)
                    throw BadDefinition("module does not split as lattice ⊕ finite part");
        tors_blocks[i] = a.sub(0, 0, t, t);
        free_blocks[i] = a.sub(t, t, fr, fr);
    }
    return MixedModule(OrderLattice(r, std::move(free_blocks)),
                       FiniteModule(r, FgAbGroup(0, grp.torsion()), std::move(tors_blocks)));
}

FiniteModule torsion_submodule(const MixedModule& m) { return m.tors_part; }

FiniteModule torsion_submodule(const OrderLattice& l) {
    std::vector<IntMat> action(l.order().zrank(), IntMat(0, 0));
    return FiniteModule(l.order(), FgAbGroup(0, {}), std::move(action));
}

FiniteModule torsion_submodule(const FiniteModule& m) { return m; }

namespace {

std::vector<Int> prime_divisors(Int n) {
    std::vector<Int> ps;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Bijectivity on a finite abelian group via Nakayama: invertible mod every
// prime p | #G on the p-cotangent space G/pG.
bool endo_bijective(const FgAbGroup& g, const IntMat& f, const std::vector<Int>& primes) {
    for (const Int& p : primes) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < g.ngens(); ++i)
            if (g.gen_order(i) % p == 0) idx.push_back(i);
        IntMat blk(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) {
                Int v = f(idx[r], idx[c]) % p;
                if (v < 0) v += p;
                blk(r, c) = v;
            }
        if (det(blk) % p == 0) return false;
    }
    return true;
}

} // namespace

std::vector<IntMat> aut_enumerate(const FiniteModule& m, const Int& cap) {
    const FgAbGroup& g = m.grp();
    std::size_t n = g.ngens();
    auto els = elements(g, Int(65536));
    std::vector<std::vector<std::size_t>> admissible(n);
    Int total = 1;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t e = 0; e < els.size(); ++e) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                ok = (g.gen_order(j) * els[e][i]) % g.gen_order(i) == 0;
            if (ok) admissible[j].push_back(e);
        }
        total *= Int(admissible[j].size());
        if (total > cap) throw CapExceeded("endomorphism candidate count exceeds cap");
    }
    std::vector<Int> primes = prime_divisors(g.order());
    std::vector<IntMat> out;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        IntMat f(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) f(i, j) = els[admissible[j][pick[j]]][i];
        bool module_endo = true;
        for (std::size_t i = 0; i < m.action().size() && module_endo; ++i)
            module_endo = reduce_mat(g, f * m.action()[i]) == reduce_mat(g, m.action()[i] * f);
        if (module_endo && endo_bijective(g, f, primes)) out.push_back(reduce_mat(g, f));
        std::size_t j = n;
        while (j > 0 && pick[j - 1] + 1 == admissible[j - 1].size()) pick[--j] = 0;
        if (j == 0) break;
        ++pick[j - 1];
    }
    return out;
}

Rat ia_finite(const FiniteModule& l, const FiniteModule& m, const Int& cap) {
    if (!(l.order() == m.order())) throw ObjectMismatch("modules over different orders");
    return Rat(Int(aut_enumerate(m, cap).size())) / Rat(Int(aut_enumerate(l, cap).size()));
}

namespace {

Submodule module_from_stable_subgroup(const FiniteModule& m, const Subgroup& s) {
    std::vector<IntMat> action(m.action().size());
    for (std::size_t i = 0; i < m.action().size(); ++i) {
        auto c = subgroup_coords(s, reduce_mat(m.grp(), m.action()[i] * s.incl.mat()));
        if (!c) throw NotSubmodule("subgroup is not action-stable");
        action[i] = *c;
    }
    return {FiniteModule(m.order(), s.grp, std::move(action)), s.incl};
}

} // namespace

Submodule submodule_from_generators(const FiniteModule& m, const IntMat& gens) {
    IntMat cur = gens;
    while (true) {
        Subgroup s = subgroup_from_generators(m.grp(), cur);
        IntMat aug = s.incl.mat();
        for (const auto& a : m.action()) aug = hstack(aug, reduce_mat(m.grp(), a * s.incl.mat()));
        Subgroup s2 = subgroup_from_generators(m.grp(), aug);
        if (s2.grp.order() == s.grp.order()) return module_from_stable_subgroup(m, s);
        cur = aug;
    }
}

StabilizerDecomposition stabilizer_data(const FiniteModule& m, const IntMat& gens,
                                        const Int& cap) {
    Subgroup s = subgroup_from_generators(m.grp(), gens);
    Submodule sub = module_from_stable_subgroup(m, s); // throws NotSubmodule if unstable
    auto auts_m = aut_enumerate(m, cap);
    auto auts_l = aut_enumerate(sub.mod, cap);

    std::set<std::vector<Int>> lset;
    for (const auto& x : elements(sub.mod.grp(), cap * 64)) {
        IntMat v(sub.mod.grp().ngens(), 1);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, 0) = x[i];
        IntMat w = reduce_mat(m.grp(), sub.incl.mat() * v);
        std::vector<Int> key(w.rows());
        for (std::size_t i = 0; i < w.rows(); ++i) key[i] = w(i, 0);
        lset.insert(std::move(key));
    }

    Int h_count = 0, ker_count = 0;
    std::set<IntMat> image;
    IntMat id_l = reduce_mat(sub.mod.grp(), IntMat::identity(sub.mod.grp().ngens()));
    for (const auto& sigma : auts_m) {
        IntMat img = reduce_mat(m.grp(), sigma * sub.incl.mat());
        bool stable = true;
        for (std::size_t c = 0; c < img.cols() && stable; ++c) {
            std::vector<Int> key(img.rows());
            for (std::size_t i = 0; i < img.rows(); ++i) key[i] = img(i, c);
            stable = lset.count(key) > 0;
        }
        if (!stable) continue;
        ++h_count;
        auto rho = subgroup_coords(s, img);
        IntMat r = reduce_mat(sub.mod.grp(), *rho);
        if (r == id_l) ++ker_count;
        image.insert(std::move(r));
    }
    return {Int(auts_m.size()), Int(auts_m.size()) / h_count, ker_count,
            Int(auts_l.size()) / Int(image.size())};
}

FinModHom::FinModHom(FiniteModule src, FiniteModule dst, IntMat mat)
    : src_(std::move(src)), dst_(std::move(dst)), hom_(src_.grp(), dst_.grp(), std::move(mat)) {
    if (!(src_.order() == dst_.order())) throw ObjectMismatch("modules over different orders");
    for (std::size_t i = 0; i < src_.action().size(); ++i)
        if (!(reduce_mat(dst_.grp(), hom_.mat() * src_.action()[i]) ==
              reduce_mat(dst_.grp(), dst_.action()[i] * hom_.mat())))
            throw BadDefinition("matrix does not intertwine the actions");
}

} // namespace commidx
