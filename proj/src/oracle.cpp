#include "commidx/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace commidx::oracle {

std::vector<Int> elt_add(const FgAbGroup& g, const std::vector<Int>& a,
                         const std::vector<Int>& b) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return reduce_vec(g, std::move(r));
}

std::vector<Int> elt_scale(const FgAbGroup& g, const Int& s, const std::vector<Int>& a) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return reduce_vec(g, std::move(r));
}

std::vector<Int> elt_apply(const FgAbGroup& dst, const std::vector<std::vector<Int>>& images,
                           const FgAbGroup& src, const std::vector<Int>& x) {
    std::vector<Int> r(dst.ngens(), 0);
    for (std::size_t j = 0; j < src.ngens(); ++j)
        for (std::size_t i = 0; i < dst.ngens(); ++i) r[i] += x[j] * images[j][i];
    return reduce_vec(dst, std::move(r));
}

namespace {

// Admissible images of each src generator in dst (elements killed by d_j,
// established by scanning, not by a gcd formula), plus the tuple-universe
// size. Shared by both enumeration entry points so their cap behaviour is
// identical.
struct HomCandidates {
    std::vector<std::vector<std::vector<Int>>> per_gen;
    Int universe;
};

HomCandidates hom_candidates(const FgAbGroup& src, const FgAbGroup& dst, const Int& cap) {
    if (!src.is_finite() || !dst.is_finite())
        throw NotFinite("oracle hom enumeration needs finite groups");
    auto all = elements(dst, cap);
    HomCandidates hc;
    hc.per_gen.resize(src.ngens());
    hc.universe = 1;
    for (std::size_t j = 0; j < src.ngens(); ++j) {
        const Int dj = src.gen_order(j);
        for (const auto& x : all) {
            bool killed = true;
            for (const Int& c : elt_scale(dst, dj, x))
                if (c != 0) killed = false;
            if (killed) hc.per_gen[j].push_back(x);
        }
        hc.universe *= Int(hc.per_gen[j].size());
        if (hc.universe > cap) throw CapExceeded("hom tuple universe over cap");
    }
    return hc;
}

} // namespace

std::vector<std::vector<std::vector<Int>>> enumerate_group_homs(const FgAbGroup& src,
                                                                const FgAbGroup& dst,
                                                                const Int& cap) {
    HomCandidates hc = hom_candidates(src, dst, cap);
    std::vector<std::vector<std::vector<Int>>> out;
    std::vector<std::size_t> idx(src.ngens(), 0);
    for (Int c = 0; c < hc.universe; ++c) {
        std::vector<std::vector<Int>> images(src.ngens());
        for (std::size_t j = 0; j < src.ngens(); ++j) images[j] = hc.per_gen[j][idx[j]];
        out.push_back(std::move(images));
        for (std::size_t j = 0; j < src.ngens(); ++j) {
            if (++idx[j] < hc.per_gen[j].size()) break;
            idx[j] = 0;
        }
    }
    return out;
}

Int aut_order_enumerated(const FgAbGroup& g, const Int& cap) {
    auto all = elements(g, cap);
    HomCandidates hc = hom_candidates(g, g, cap);
    std::size_t n = g.ngens(), nelem = all.size();

    // machine-word mirrors (the enumeration cap bounds every coordinate)
    std::vector<long> mod(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (g.gen_order(i) > (Int(1) << 20))
            throw CapExceeded("group modulus too large for element scans");
        mod[i] = g.gen_order(i).convert_to<long>();
    }
    auto to_fast = [&](const std::vector<Int>& v) {
        std::vector<long> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = v[i].convert_to<long>();
        return f;
    };
    std::vector<std::vector<long>> fall(nelem);
    for (std::size_t e = 0; e < nelem; ++e) fall[e] = to_fast(all[e]);
    std::vector<std::vector<std::vector<long>>> fcand(n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& x : hc.per_gen[j]) fcand[j].push_back(to_fast(x));

    Int count = 0;
    std::vector<std::size_t> idx(n, 0);
    std::vector<char> seen(nelem);
    std::vector<long> y(n);
    for (Int c = 0; c < hc.universe; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        std::size_t distinct = 0;
        for (const auto& x : fall) {
            for (std::size_t i = 0; i < n; ++i) {
                long acc = 0;
                for (std::size_t j = 0; j < n; ++j)
                    acc = (acc + x[j] * fcand[j][idx[j]][i]) % mod[i];
                y[i] = acc;
            }
            // mixed-radix code of the image; marks it in the seen-bitmap
            std::size_t code = 0;
            for (std::size_t i = 0; i < n; ++i)
                code = code * static_cast<std::size_t>(mod[i]) + static_cast<std::size_t>(y[i]);
            if (!seen[code]) {
                seen[code] = 1;
                ++distinct;
            }
        }
        if (distinct == nelem) ++count;
        for (std::size_t j = 0; j < n; ++j) {
            if (++idx[j] < hc.per_gen[j].size()) break;
            idx[j] = 0;
        }
    }
    return count;
}

namespace {

// Generator images of a hom, read off its matrix columns.
std::vector<std::vector<Int>> hom_columns(const AbHom& h) {
    std::vector<std::vector<Int>> out(h.src().ngens());
    for (std::size_t j = 0; j < h.src().ngens(); ++j) {
        out[j].resize(h.dst().ngens());
        for (std::size_t i = 0; i < h.dst().ngens(); ++i) out[j][i] = h.mat()(i, j);
    }
    return out;
}

std::vector<std::vector<Int>> identity_tuple(const FgAbGroup& g) {
    std::vector<std::vector<Int>> t(g.ngens(), std::vector<Int>(g.ngens(), Int(0)));
    for (std::size_t j = 0; j < g.ngens(); ++j) t[j][j] = 1;
    return t;
}

bool bijective_on(const FgAbGroup& g, const std::vector<std::vector<Int>>& phi,
                  const std::vector<std::vector<Int>>& all) {
    std::set<std::vector<Int>> im;
    for (const auto& x : all) im.insert(elt_apply(g, phi, g, x));
    return im.size() == all.size();
}

} // namespace

std::vector<std::vector<std::vector<Int>>> enumerate_module_homs(const FiniteModule& a,
                                                                 const FiniteModule& b,
                                                                 const Int& cap) {
    if (!(a.order() == b.order())) throw ObjectMismatch("module homs need a common order");
    auto all = elements(a.grp(), cap);
    const std::size_t zr = a.order().zrank();
    auto act_tuple = [](const FiniteModule& mod, std::size_t i) {
        std::vector<std::vector<Int>> imgs(mod.grp().ngens());
        for (std::size_t j = 0; j < mod.grp().ngens(); ++j) {
            imgs[j].resize(mod.grp().ngens());
            for (std::size_t k = 0; k < mod.grp().ngens(); ++k) imgs[j][k] = mod.action()[i](k, j);
        }
        return imgs;
    };
    std::vector<std::vector<std::vector<Int>>> act_a(zr), act_b(zr);
    for (std::size_t i = 0; i < zr; ++i) {
        act_a[i] = act_tuple(a, i);
        act_b[i] = act_tuple(b, i);
    }
    std::vector<std::vector<std::vector<Int>>> out;
    for (auto& phi : enumerate_group_homs(a.grp(), b.grp(), cap)) {
        bool ok = true;
        for (std::size_t i = 0; i < zr && ok; ++i)
            for (const auto& x : all) {
                auto lhs =
                    elt_apply(b.grp(), phi, a.grp(), elt_apply(a.grp(), act_a[i], a.grp(), x));
                auto rhs =
                    elt_apply(b.grp(), act_b[i], b.grp(), elt_apply(b.grp(), phi, a.grp(), x));
                if (lhs != rhs) {
                    ok = false;
                    break;
                }
            }
        if (ok) out.push_back(std::move(phi));
    }
    return out;
}

OracleReport correspondence_index_bruteforce(const Correspondence<AbGroupContext>& c,
                                             const Int& cap) {
    auto ws = elements(c.apex, cap);
    Int universe = Int(ws.size());
    auto leg = [&](const AbHom& h) {
        auto ys = elements(h.dst(), cap);
        universe += Int(ys.size());
        auto images = hom_columns(h);
        std::set<std::vector<Int>> im;
        Int ker = 0;
        const std::vector<Int> zero(h.dst().ngens(), Int(0));
        for (const auto& x : ws) {
            auto y = elt_apply(h.dst(), images, h.src(), x);
            if (y == zero) ++ker;
            im.insert(std::move(y));
        }
        return Rat(Int(ys.size())) / Rat(Int(im.size()) * ker);
    };
    Rat il = leg(c.left);
    Rat ir = leg(c.right);
    return {ir / il, "element scan over apex and endpoints", universe};
}

OracleReport aut_correspondence_index(const FinModHom& f, const FinModHom& g, const Int& cap) {
    if (!(f.src() == g.src())) throw ObjectMismatch("legs must share the apex module");
    const FiniteModule& w = f.src();
    const FiniteModule& l = f.dst();
    const FiniteModule& m = g.dst();

    auto end_w = enumerate_module_homs(w, w, cap);
    auto end_l = enumerate_module_homs(l, l, cap);
    auto end_m = enumerate_module_homs(m, m, cap);
    Int universe = Int(end_l.size()) * Int(end_m.size()) * Int(end_w.size());

    auto all_w = elements(w.grp(), cap);
    auto all_l = elements(l.grp(), cap);
    auto all_m = elements(m.grp(), cap);
    auto fcols = hom_columns(f.hom());
    auto gcols = hom_columns(g.hom());

    // Bijective endomorphisms of each endpoint, keyed by their composite with
    // the leg on the apex generators; ν then joins against both dictionaries.
    using Key = std::vector<std::vector<Int>>;
    auto build = [&](const FiniteModule& mod, const std::vector<std::vector<std::vector<Int>>>& endos,
                     const std::vector<std::vector<Int>>& all,
                     const std::vector<std::vector<Int>>& legcols,
                     std::map<Key, std::vector<std::size_t>>& dict, std::size_t& id_at) {
        Int auts = 0;
        auto id = identity_tuple(mod.grp());
        for (std::size_t i = 0; i < endos.size(); ++i) {
            if (endos[i] == id) id_at = i;
            if (!bijective_on(mod.grp(), endos[i], all)) continue;
            ++auts;
            Key k(legcols.size());
            for (std::size_t j = 0; j < legcols.size(); ++j)
                k[j] = elt_apply(mod.grp(), endos[i], mod.grp(), legcols[j]);
            dict[k].push_back(i);
        }
        return auts;
    };
    std::map<Key, std::vector<std::size_t>> by_lf, by_mg;
    std::size_t id_l = end_l.size(), id_m = end_m.size();
    Int aut_l = build(l, end_l, all_l, fcols, by_lf, id_l);
    Int aut_m = build(m, end_m, all_m, gcols, by_mg, id_m);

    std::set<std::size_t> im_l, im_m;
    Int ker_l = 0, ker_m = 0;
    for (const auto& nu : end_w) {
        if (!bijective_on(w.grp(), nu, all_w)) continue;
        Key kf(fcols.size()), kg(gcols.size());
        for (std::size_t j = 0; j < nu.size(); ++j) {
            kf[j] = elt_apply(l.grp(), fcols, w.grp(), nu[j]);
            kg[j] = elt_apply(m.grp(), gcols, w.grp(), nu[j]);
        }
        auto itl = by_lf.find(kf);
        auto itm = by_mg.find(kg);
        if (itl == by_lf.end() || itm == by_mg.end()) continue;
        const auto& ls = itl->second;
        const auto& ms = itm->second;
        im_l.insert(ls.begin(), ls.end());
        im_m.insert(ms.begin(), ms.end());
        if (std::find(ls.begin(), ls.end(), id_l) != ls.end()) ker_l += Int(ms.size());
        if (std::find(ms.begin(), ms.end(), id_m) != ms.end()) ker_m += Int(ls.size());
    }

    Rat i_left = Rat(aut_l) / Rat(Int(im_l.size()) * ker_l);
    Rat i_right = Rat(aut_m) / Rat(Int(im_m.size()) * ker_m);
    return {i_right / i_left, "bijective endomorphism triple join", universe};
}

} // namespace commidx::oracle
