#pragma once
#include "zhualg/cyclotomic.hpp"
#include <map>
#include <vector>
#include <optional>
#include <algorithm>
#include <type_traits>

namespace zhualg {

template <class F> using SVec = std::map<int, F>;
template <class F> using Mat = std::vector<std::vector<F>>;

// the scalar is a non-deduced context so expression-template arguments
// (mpq_class products and the like) convert instead of poisoning deduction
template <class F>
void sv_axpy(SVec<F>& dst, const std::type_identity_t<F>& c, const SVec<F>& src) {
    if (field_is_zero(c)) return;
    for (const auto& [k, v] : src) {
        auto it = dst.find(k);
        if (it == dst.end()) {
            F t = c * v;
            if (!field_is_zero(t)) dst.emplace(k, std::move(t));
        } else {
            it->second = it->second + c * v;
            if (field_is_zero(it->second)) dst.erase(it);
        }
    }
}

template <class F>
void sv_scale(SVec<F>& v, const std::type_identity_t<F>& c) {
    if (field_is_zero(c)) { v.clear(); return; }
    for (auto& [k, x] : v) x = x * c;
}

// In-place Gaussian elimination; returns pivot column list (rank = size).
template <class F>
std::vector<int> row_reduce(Mat<F>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && field_is_zero(m[sel][c])) ++sel;
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        F inv = field_one<F>() / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || field_is_zero(m[i][c])) continue;
            F f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    return pivots;
}

template <class F>
int rank(Mat<F> m) { return (int)row_reduce(m).size(); }

// Basis of the right kernel {x : m x = 0}.
template <class F>
Mat<F> kernel_basis(Mat<F> m) {
    size_t cols = m.empty() ? 0 : m[0].size();
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Mat<F> out;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<F> x(cols, F(0));
        x[fc] = field_one<F>();
        for (size_t r = 0; r < pivots.size(); ++r) {
            // row r: x[pivots[r]] + sum_{j free} m[r][j] x[j] = 0
            x[pivots[r]] = -m[r][fc];
        }
        out.push_back(std::move(x));
    }
    return out;
}

// Solve m x = b (m not modified); nullopt if inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& m, const std::vector<F>& b) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    Mat<F> aug(rows, std::vector<F>(cols + 1, F(0)));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
        aug[i][cols] = b[i];
    }
    auto pivots = row_reduce(aug);
    std::vector<F> x(cols, F(0));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if ((size_t)pivots[r] == cols) return std::nullopt; // 0 = 1 row
        x[pivots[r]] = aug[r][cols];
    }
    return x;
}

// Repeated solves against a fixed full-column-rank matrix (columns = basis
// vectors).  Factors once, then each solve is a matrix-vector product.
template <class F>
class LinSolver {
public:
    explicit LinSolver(const Mat<F>& m) {
        rows_ = m.size();
        cols_ = rows_ ? m[0].size() : 0;
        Mat<F> aug(rows_, std::vector<F>(cols_ + rows_, F(0)));
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug[i][j] = m[i][j];
            aug[i][cols_ + i] = field_one<F>();
        }
        auto pivots = row_reduce(aug);
        rank_ = 0;
        for (int c : pivots)
            if ((size_t)c < cols_) ++rank_;
        if ((size_t)rank_ != cols_) throw std::invalid_argument("LinSolver: columns not independent");
        trans_.assign(rows_, std::vector<F>(rows_, F(0)));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < rows_; ++j) trans_[i][j] = aug[i][cols_ + j];
    }

    // Coordinates of b over the columns; nullopt if b is outside the span.
    std::optional<std::vector<F>> solve(const std::vector<F>& b) const {
        std::vector<F> y(rows_, F(0));
        for (size_t i = 0; i < rows_; ++i) {
            F acc(0);
            for (size_t j = 0; j < rows_; ++j)
                if (!field_is_zero(trans_[i][j]) && !field_is_zero(b[j])) acc = acc + trans_[i][j] * b[j];
            y[i] = acc;
        }
        for (size_t i = cols_; i < rows_; ++i)
            if (!field_is_zero(y[i])) return std::nullopt;
        y.resize(cols_);
        return y;
    }

private:
    Mat<F> trans_;
    size_t rows_ = 0, cols_ = 0;
    int rank_ = 0;
};

// Incremental row echelon over sparse rows keyed by a fixed coordinate
// priority (smaller key = eliminated first).  Rows are kept with leading
// coefficient 1; reduce() returns the canonical representative modulo the
// row span.
template <class F>
class SparseEchelon {
public:
    // Returns true if the row enlarged the span.
    bool add(SVec<F> row) {
        reduce_inplace(row);
        if (row.empty()) return false;
        auto lead = row.begin();
        int pc = lead->first;
        F inv = field_one<F>() / lead->second;
        sv_scale(row, inv);
        // keep existing rows reduced against the new pivot
        for (auto& [p, r] : rows_) {
            auto it = r.find(pc);
            if (it != r.end()) {
                F c = it->second;
                sv_axpy(r, -c, row);
            }
        }
        rows_.emplace(pc, std::move(row));
        return true;
    }

    SVec<F> reduce(SVec<F> v) const {
        reduce_inplace(v);
        return v;
    }

    bool contains(const SVec<F>& v) const { return reduce(v).empty(); }
    int rank() const { return (int)rows_.size(); }
    const std::map<int, SVec<F>>& rows() const { return rows_; }

private:
    void reduce_inplace(SVec<F>& v) const {
        // ascending pivot order; eliminating a pivot only introduces
        // coordinates with larger keys, so one pass suffices
        for (auto it = v.begin(); it != v.end();) {
            auto rit = rows_.find(it->first);
            if (rit == rows_.end()) { ++it; continue; }
            F c = it->second;
            sv_axpy(v, -c, rit->second);
            it = v.upper_bound(rit->first);
        }
    }

    std::map<int, SVec<F>> rows_; // pivot coordinate -> row
};

} // namespace zhualg
