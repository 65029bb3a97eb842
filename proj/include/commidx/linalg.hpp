#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "commidx/errors.hpp"

namespace commidx {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Floor division (cpp_int's / truncates toward zero).
Int floor_div(const Int& a, const Int& b);

std::string rat_to_string(const Rat& r);        // "p/q", or "p" when q = 1
Rat rat_from_string(const std::string& s);      // throws InputError

// Dense row-major matrix over an exact scalar (Int or Rat). Matrices act on
// column vectors; composition g∘f is (g matrix)·(f matrix). Empty matrices
// (0 rows and/or 0 cols) are legal everywhere and stand for maps to/from
// the zero group.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw BadDefinition("matrix entry count mismatch");
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<T>& entries() const { return e_; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    // Lexicographic; lets matrices key std::map (deterministic iteration).
    bool operator<(const Mat& o) const {
        if (rows_ != o.rows_) return rows_ < o.rows_;
        if (cols_ != o.cols_) return cols_ < o.cols_;
        return e_ < o.e_;
    }

    Mat operator+(const Mat& o) const {
        require_same_shape(o);
        Mat r(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
        return r;
    }
    Mat operator-(const Mat& o) const {
        require_same_shape(o);
        Mat r(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
        return r;
    }
    Mat operator-() const {
        Mat r(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
        return r;
    }
    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw BadDefinition("matrix product shape mismatch");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }
    friend Mat operator*(const T& s, const Mat& m) {
        Mat r(m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.e_.size(); ++k) r.e_[k] = s * m.e_[k];
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Mat sub(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Mat r(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }
    Mat col(std::size_t j) const { return sub(0, j, rows_, 1); }

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const {
        for (const T& x : e_)
            if (x != 0) return false;
        return true;
    }
    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row a -= q * row b
    void row_axpy(std::size_t a, std::size_t b, const T& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) -= q * (*this)(b, j);
    }
    void col_axpy(std::size_t a, std::size_t b, const T& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) -= q * (*this)(i, b);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
    }
    void negate_col(std::size_t a) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
    }

private:
    void require_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw BadDefinition("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> e_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

IntMat hstack(const IntMat& a, const IntMat& b);
IntMat vstack(const IntMat& a, const IntMat& b);

RatMat to_rat(const IntMat& a);
// Integral cast; nullopt if any entry has a denominator.
std::optional<IntMat> to_int(const RatMat& a);

// Row Hermite normal form: u·a = h, u unimodular, h upper echelon with
// positive pivots and entries above each pivot reduced into [0, pivot).
struct HnfResult {
    IntMat h;
    IntMat u;
    std::size_t rank;
};
HnfResult hnf(const IntMat& a);

// Smith normal form: u·a·v = diag(d), d1 | d2 | … | dr, all di > 0.
struct SnfResult {
    std::vector<Int> d;
    IntMat u;
    IntMat v;
};
SnfResult snf(const IntMat& a);

// Columns form a saturated basis of {x : a·x = 0}.
IntMat kernel_basis(const IntMat& a);

// Canonical full-column-rank basis of the column span (column-style HNF).
IntMat col_basis(const IntMat& a);

// Exact determinant (Bareiss). det of the 0×0 matrix is 1.
Int det(const IntMat& a);
Rat det(const RatMat& a);

// Unique solution x of a·x = b for a of full column rank; nullopt when
// inconsistent; SingularMatrix when the system is underdetermined.
std::optional<RatMat> solve(const RatMat& a, const RatMat& b);
RatMat inverse(const RatMat& a);

// Integer solution w of m·w = x (one column of w per column of x);
// nullopt when none exists. Free coordinates are set to 0.
std::optional<IntMat> solve_integer(const IntMat& m, const IntMat& x);

// (Λ1 : Λ2) for Λ2 ⊆ Λ1 of equal rank, columns spanning each lattice.
// Throws RankMismatch / NotASublattice.
Rat lattice_index(const IntMat& sup, const IntMat& sub);

// Basis of Λa ∩ Λb (may have lower rank; result is canonical col_basis).
IntMat lattice_intersect(const IntMat& a, const IntMat& b);

} // namespace commidx
