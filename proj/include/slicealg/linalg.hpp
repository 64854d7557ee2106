#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "slicealg/scalar.hpp"

namespace slicealg {

template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, S(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    S& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    const S& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    void append_row(const std::vector<S>& row) {
        if (rows_ == 0 && cols_ == 0) cols_ = int(row.size());
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<S> data_;
};

namespace detail {

template <class S>
double pivot_scale(const Matrix<S>& m) {
    if constexpr (ScalarTraits<S>::exact) {
        return 0.0;
    } else {
        double s = 1.0;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) s = std::max(s, std::abs(m(r, c)));
        return s;
    }
}

template <class S>
bool negligible(const S& v, double scale) {
    if constexpr (ScalarTraits<S>::exact) {
        (void)scale;
        return sgn(v) == 0;
    } else {
        return std::abs(v) <= float_tolerance() * scale;
    }
}

}  // namespace detail

// Reduced row echelon form, in place. Returns pivot columns. The first
// `ncols` columns are eligible as pivots; remaining columns ride along
// (augmented part).
template <class S>
std::vector<int> rref(Matrix<S>& m, int ncols = -1) {
    if (ncols < 0) ncols = m.cols();
    const double scale = detail::pivot_scale(m);
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < ncols && row < m.rows(); ++col) {
        int best = -1;
        if constexpr (ScalarTraits<S>::exact) {
            for (int r = row; r < m.rows(); ++r)
                if (sgn(m(r, col)) != 0) {
                    best = r;
                    break;
                }
        } else {
            double bv = 0;
            for (int r = row; r < m.rows(); ++r)
                if (std::abs(m(r, col)) > bv) {
                    bv = std::abs(m(r, col));
                    best = r;
                }
            if (best >= 0 && detail::negligible(m(best, col), scale)) best = -1;
        }
        if (best < 0) continue;
        if (best != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(best, c), m(row, c));
        S inv = S(1) / m(row, col);
        for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row) continue;
            S f = m(r, col);
            if (f == S(0)) continue;
            for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    if constexpr (!ScalarTraits<S>::exact) {
        for (int r = row; r < m.rows(); ++r)
            for (int c = 0; c < ncols; ++c)
                if (detail::negligible(m(r, c), scale)) m(r, c) = 0;
    }
    return pivots;
}

template <class S>
int rank(Matrix<S> m) {
    return int(rref(m).size());
}

// Determinant of a square matrix by elimination.
template <class S>
S determinant(Matrix<S> m) {
    const int n = m.rows();
    S det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n && piv < 0; ++r)
            if (!ScalarTraits<S>::is_zero(m(r, c))) piv = r;
        if (piv < 0) return S(0);
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(m(c, k), m(piv, k));
            det = -det;
        }
        det *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (ScalarTraits<S>::is_zero(m(r, c))) continue;
            const S factor = m(r, c) / m(c, c);
            for (int k = c; k < n; ++k) m(r, k) -= factor * m(c, k);
        }
    }
    return det;
}

// Basis of {v : M v = 0}.
template <class S>
std::vector<std::vector<S>> kernel(Matrix<S> m) {
    const int n = m.cols();
    auto piv = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<std::vector<S>> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<S> v(n, S(0));
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(int(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class S>
struct AffineSolution {
    std::vector<S> particular;
    std::vector<std::vector<S>> directions;
};

// Solves M v = b. Returns nullopt when inconsistent.
template <class S>
std::optional<AffineSolution<S>> solve(const Matrix<S>& a, const std::vector<S>& b) {
    const int n = a.cols();
    Matrix<S> aug(a.rows(), n + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    const double scale = detail::pivot_scale(aug);
    auto piv = rref(aug, n);
    for (int r = int(piv.size()); r < aug.rows(); ++r)
        if (!detail::negligible(aug(r, n), scale)) return std::nullopt;
    AffineSolution<S> out;
    out.particular.assign(n, S(0));
    for (std::size_t r = 0; r < piv.size(); ++r) out.particular[piv[r]] = aug(int(r), n);
    std::vector<bool> is_pivot(n, false);
    for (int p : piv) is_pivot[p] = true;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<S> v(n, S(0));
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -aug(int(r), free);
        out.directions.push_back(std::move(v));
    }
    return out;
}

// Incrementally maintained reduced echelon basis of a row space.
template <class S>
class EchelonBasis {
public:
    explicit EchelonBasis(int n) : n_(n) {}

    // Returns true if the row was independent of the rows seen so far.
    bool add(std::vector<S> row) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const S& f = row[pivots_[i]];
            if (f == S(0)) continue;
            S fc = f;
            for (int c = 0; c < n_; ++c) row[c] -= fc * rows_[i][c];
        }
        int p = -1;
        double best = 0;
        for (int c = 0; c < n_; ++c) {
            if constexpr (ScalarTraits<S>::exact) {
                if (sgn(row[c]) != 0) {
                    p = c;
                    break;
                }
            } else {
                if (std::abs(row[c]) > std::max(best, float_tolerance())) {
                    best = std::abs(row[c]);
                    p = c;
                }
            }
        }
        if (p < 0) return false;
        S inv = S(1) / row[p];
        for (auto& v : row) v *= inv;
        for (auto& r : rows_) {
            S f = r[p];
            if (f == S(0)) continue;
            for (int c = 0; c < n_; ++c) r[c] -= f * row[c];
        }
        rows_.push_back(std::move(row));
        pivots_.push_back(p);
        return true;
    }

    int rank() const { return int(rows_.size()); }
    bool full() const { return rank() == n_; }

    // Null space of the accumulated rows.
    std::vector<std::vector<S>> null_space() const {
        std::vector<bool> is_pivot(n_, false);
        for (int p : pivots_) is_pivot[p] = true;
        std::vector<std::vector<S>> basis;
        for (int free = 0; free < n_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<S> v(n_, S(0));
            v[free] = 1;
            for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][free];
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    int n_;
    std::vector<std::vector<S>> rows_;
    std::vector<int> pivots_;
};

}  // namespace slicealg
