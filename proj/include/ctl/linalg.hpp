#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ctl/errors.hpp"
#include "ctl/rational.hpp"

namespace ctl {

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using IntMat = Eigen::MatrixXi;
using IntVec = Eigen::VectorXi;

inline RatMat rat_zeros(Eigen::Index rows, Eigen::Index cols) {
    RatMat m(rows, cols);
    m.setConstant(Rat(0));
    return m;
}

inline RatMat rat_identity(Eigen::Index n) {
    RatMat m = rat_zeros(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
}

inline RatMat rat_from_int(const IntMat& a) {
    RatMat m(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) m(i, j) = Rat(a(i, j));
    return m;
}

/// In-place reduced row echelon form. Pivoting is positional (first nonzero
/// entry in column order), never by magnitude, so the result is deterministic
/// and exact. Returns the pivot columns in order.
inline std::vector<Eigen::Index> reduced_row_echelon(RatMat& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index sel = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (!m(r, col).is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != row) m.row(sel).swap(m.row(row));
        Rat inv = Rat(1) / m(row, col);
        for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            Rat f = m(r, col);
            for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline Eigen::Index rank_of(RatMat m) { return static_cast<Eigen::Index>(reduced_row_echelon(m).size()); }

/// Columns form the canonical kernel basis: one vector per free column, with
/// entry 1 at the free position and the pivot rows back-substituted.
inline RatMat kernel_basis(const RatMat& a) {
    RatMat m = a;
    std::vector<Eigen::Index> pivots = reduced_row_echelon(m);
    std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
    for (Eigen::Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    Eigen::Index nfree = a.cols() - static_cast<Eigen::Index>(pivots.size());
    RatMat ker = rat_zeros(a.cols(), nfree);
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        ker(c, k) = Rat(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            ker(pivots[r], k) = -m(static_cast<Eigen::Index>(r), c);
        ++k;
    }
    return ker;
}

/// Canonical particular solution of A x = b (free variables zero), or nullopt
/// if the system is inconsistent.
inline std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
    RatMat aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    std::vector<Eigen::Index> pivots = reduced_row_echelon(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    RatVec x = rat_zeros(a.cols(), 1);
    for (size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(static_cast<Eigen::Index>(r), a.cols());
    return x;
}

/// Coordinate extraction against a fixed spanning set (columns of `span`).
/// Precomputes the elimination once; coordinates() is then a matvec plus
/// back-substitution. Used wherever a vector must be expressed in a frozen
/// basis (structure constants, Ext coset coordinates).
class SpanSolver {
public:
    SpanSolver() = default;
    explicit SpanSolver(RatMat span) : span_(std::move(span)) {
        Eigen::Index m = span_.rows();
        RatMat aug(m, span_.cols() + m);
        aug.leftCols(span_.cols()) = span_;
        aug.rightCols(m) = rat_identity(m);
        Eigen::Index row = 0;
        for (Eigen::Index col = 0; col < span_.cols() && row < m; ++col) {
            Eigen::Index sel = -1;
            for (Eigen::Index r = row; r < m; ++r)
                if (!aug(r, col).is_zero()) {
                    sel = r;
                    break;
                }
            if (sel < 0) continue;
            if (sel != row) aug.row(sel).swap(aug.row(row));
            Rat inv = Rat(1) / aug(row, col);
            for (Eigen::Index c = col; c < aug.cols(); ++c) aug(row, c) = aug(row, c) * inv;
            for (Eigen::Index r = 0; r < m; ++r) {
                if (r == row || aug(r, col).is_zero()) continue;
                Rat f = aug(r, col);
                for (Eigen::Index c = col; c < aug.cols(); ++c) aug(r, c) = aug(r, c) - f * aug(row, c);
            }
            pivots_.push_back(col);
            ++row;
        }
        elim_ = aug.rightCols(m);
    }

    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots_.size()); }
    const RatMat& span() const { return span_; }

    /// Coordinates x with span * x = v, free coordinates zero; nullopt if v
    /// is outside the span.
    std::optional<RatVec> coordinates(const RatVec& v) const {
        RatVec w = elim_ * v;
        for (Eigen::Index r = rank(); r < w.size(); ++r)
            if (!w(r).is_zero()) return std::nullopt;
        RatVec x = rat_zeros(span_.cols(), 1);
        for (size_t r = 0; r < pivots_.size(); ++r) x(pivots_[r]) = w(static_cast<Eigen::Index>(r));
        return x;
    }

    bool contains(const RatVec& v) const { return coordinates(v).has_value(); }

private:
    RatMat span_;
    RatMat elim_;
    std::vector<Eigen::Index> pivots_;
};

} // namespace ctl
