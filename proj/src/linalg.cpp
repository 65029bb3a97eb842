#include "commidx/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace commidx {

using boost::multiprecision::abs;

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

std::string rat_to_string(const Rat& r) {
    Int n = numerator(r), d = denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rat rat_from_string(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("malformed rational: " + s);
    }
}

IntMat hstack(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw BadDefinition("hstack row mismatch");
    IntMat r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

IntMat vstack(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.cols()) throw BadDefinition("vstack col mismatch");
    IntMat r(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) r(a.rows() + i, j) = b(i, j);
    }
    return r;
}

RatMat to_rat(const IntMat& a) {
    RatMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
    return r;
}

std::optional<IntMat> to_int(const RatMat& a) {
    IntMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (denominator(a(i, j)) != 1) return std::nullopt;
            r(i, j) = numerator(a(i, j));
        }
    return r;
}

HnfResult hnf(const IntMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    IntMat h = a;
    IntMat u = IntMat::identity(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // Gcd elimination below row r in column c.
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == m) break; // column clear below r
            if (best != r) {
                h.swap_rows(r, best);
                u.swap_rows(r, best);
            }
            bool below_clear = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                Int q = h(i, c) / h(r, c); // truncated; remainder shrinks
                h.row_axpy(i, r, q);
                u.row_axpy(i, r, q);
                if (h(i, c) != 0) below_clear = false;
            }
            if (below_clear) break;
        }
        if (h(r, c) == 0) continue; // no pivot in this column
        if (h(r, c) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h(i, c), h(r, c));
            h.row_axpy(i, r, q);
            u.row_axpy(i, r, q);
        }
        ++r;
    }
    return HnfResult{std::move(h), std::move(u), r};
}

SnfResult snf(const IntMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    IntMat s = a;
    IntMat u = IntMat::identity(m);
    IntMat v = IntMat::identity(n);
    std::size_t t = 0;
    while (t < m && t < n) {
        // Locate a minimal nonzero entry in the trailing submatrix.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (s(i, j) != 0 && (pi == m || abs(s(i, j)) < abs(s(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break; // submatrix zero
        if (pi != t) {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
        }
        if (pj != t) {
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s(i, t) == 0) continue;
                Int q = s(i, t) / s(t, t);
                s.row_axpy(i, t, q);
                u.row_axpy(i, t, q);
                if (s(i, t) != 0) { // remainder strictly smaller: promote it
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s(t, j) == 0) continue;
                Int q = s(t, j) / s(t, t);
                s.col_axpy(j, t, q);
                v.col_axpy(j, t, q);
                if (s(t, j) != 0) {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Pivot must divide every remaining entry (gives d1 | d2 | …).
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        s.row_axpy(t, i, Int(-1)); // row t += row i
                        u.row_axpy(t, i, Int(-1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }
        ++t;
    }
    std::vector<Int> d;
    for (std::size_t i = 0; i < t; ++i)
        if (s(i, i) != 0) d.push_back(s(i, i));
    return SnfResult{std::move(d), std::move(u), std::move(v)};
}

IntMat kernel_basis(const IntMat& a) {
    SnfResult s = snf(a);
    const std::size_t r = s.d.size(), n = a.cols();
    // u·a·v = diag(d) makes the last n−r columns of v a saturated kernel basis.
    return s.v.sub(0, r, n, n - r);
}

IntMat col_basis(const IntMat& a) {
    HnfResult h = hnf(a.transpose());
    return h.h.sub(0, 0, h.rank, a.rows()).transpose();
}

Int det(const IntMat& a) {
    if (!a.is_square()) throw BadDefinition("det of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMat w = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t piv = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (w(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv == n) return 0;
            w.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev; // exact
        prev = w(k, k);
    }
    return sign * w(n - 1, n - 1);
}

Rat det(const RatMat& a) {
    if (!a.is_square()) throw BadDefinition("det of non-square matrix");
    const std::size_t n = a.rows();
    RatMat w = a;
    Rat d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (w(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv == n) return 0;
        if (piv != k) {
            w.swap_rows(k, piv);
            d = -d;
        }
        d *= w(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Rat f = w(i, k) / w(k, k);
            for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    return d;
}

std::optional<RatMat> solve(const RatMat& a, const RatMat& b) {
    if (a.rows() != b.rows()) throw BadDefinition("solve shape mismatch");
    const std::size_t m = a.rows(), n = a.cols(), k = b.cols();
    RatMat aug(m, n + k);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t piv = m;
        for (std::size_t i = r; i < m; ++i)
            if (aug(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv == m) continue;
        if (piv != r) aug.swap_rows(r, piv);
        Rat p = aug(r, c);
        for (std::size_t j = c; j < n + k; ++j) aug(r, j) /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || aug(i, c) == 0) continue;
            Rat f = aug(i, c);
            for (std::size_t j = c; j < n + k; ++j) aug(i, j) -= f * aug(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (aug(i, n + j) != 0) return std::nullopt; // inconsistent
    if (r < n) throw SingularMatrix("solve: underdetermined system");
    RatMat x(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) x(pivot_col[i], j) = aug(i, n + j);
    return x;
}

RatMat inverse(const RatMat& a) {
    if (!a.is_square()) throw SingularMatrix("inverse of non-square matrix");
    auto x = solve(a, RatMat::identity(a.rows()));
    if (!x) throw SingularMatrix("inverse of singular matrix");
    return *x;
}

std::optional<IntMat> solve_integer(const IntMat& m, const IntMat& x) {
    if (m.rows() != x.rows()) throw BadDefinition("solve_integer shape mismatch");
    SnfResult s = snf(m);
    IntMat b = s.u * x;
    const std::size_t r = s.d.size(), n = m.cols(), k = x.cols();
    IntMat z(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            if (b(i, j) % s.d[i] != 0) return std::nullopt;
            z(i, j) = b(i, j) / s.d[i];
        }
        for (std::size_t i = r; i < m.rows(); ++i)
            if (b(i, j) != 0) return std::nullopt;
    }
    return s.v * z;
}

Rat lattice_index(const IntMat& sup, const IntMat& sub) {
    if (sup.rows() != sub.rows()) throw RankMismatch("lattice_index: ambient dimension mismatch");
    IntMat a = col_basis(sup), b = col_basis(sub);
    if (a.cols() != b.cols()) throw RankMismatch("lattice_index: rank mismatch");
    if (a.cols() == 0) return 1;
    auto x = solve(to_rat(a), to_rat(b));
    if (!x) throw NotASublattice("lattice_index: sub not contained in sup's span");
    auto xi = to_int(*x);
    if (!xi) throw NotASublattice("lattice_index: sub is not a sublattice of sup");
    return Rat(abs(det(*xi)));
}

IntMat lattice_intersect(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw BadDefinition("lattice_intersect: ambient mismatch");
    IntMat ba = col_basis(a), bb = col_basis(b);
    if (ba.cols() == 0 || bb.cols() == 0) return IntMat(a.rows(), 0);
    IntMat k = kernel_basis(hstack(ba, -bb));
    IntMat top = k.sub(0, 0, ba.cols(), k.cols());
    return col_basis(ba * top);
}

} // namespace commidx
