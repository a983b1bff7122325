#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <cstddef>
#include <vector>

#include "maxload/types.hpp"

namespace maxload {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Pivot-size proxy: prefer small entries to keep intermediate growth down.
inline std::size_t elimination_size_proxy(const Rational& q) {
    return bit_length(numerator(q)) + bit_length(denominator(q));
}
template <typename Scalar>
std::size_t elimination_size_proxy(const Scalar&) {
    return 0;  // no preference for other field types
}

struct RrefInfo {
    std::vector<Eigen::Index> pivotCols;
    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivotCols.size()); }
};

// Exact Gauss-Jordan to *reduced* row echelon form (pivots 1, pivot columns
// cleared above and below). The RREF is unique, so downstream consumers get
// a canonical object regardless of pivot-row choices made here.
template <typename Scalar>
RrefInfo rref_in_place(DenseMatrix<Scalar>& m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    RrefInfo info;
    Eigen::Index pr = 0;
    for (Eigen::Index col = 0; col < cols && pr < rows; ++col) {
        Eigen::Index best = -1;
        std::size_t bestSize = 0;
        for (Eigen::Index i = pr; i < rows; ++i) {
            if (m(i, col) == 0) continue;
            const std::size_t sz = elimination_size_proxy(m(i, col));
            if (best < 0 || sz < bestSize) {
                best = i;
                bestSize = sz;
            }
        }
        if (best < 0) continue;
        if (best != pr) m.row(best).swap(m.row(pr));
        {
            const Scalar inv = m(pr, col);
            for (Eigen::Index j = col; j < cols; ++j) m(pr, j) /= inv;
        }
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == pr || m(i, col) == 0) continue;
            const Scalar f = m(i, col);
            for (Eigen::Index j = col; j < cols; ++j) m(i, j) -= f * m(pr, j);
        }
        info.pivotCols.push_back(col);
        ++pr;
    }
    return info;
}

// Canonical nullspace basis from the RREF: one vector per free column
// (ascending), with 1 in the free position and the negated RREF entries in
// the pivot positions. Returned as columns.
template <typename Scalar>
DenseMatrix<Scalar> nullspace_basis(DenseMatrix<Scalar> m, RrefInfo* infoOut = nullptr) {
    const RrefInfo info = rref_in_place(m);
    if (infoOut) *infoOut = info;
    const Eigen::Index cols = m.cols();
    std::vector<Eigen::Index> freeCols;
    {
        std::size_t k = 0;
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (k < info.pivotCols.size() && info.pivotCols[k] == c)
                ++k;
            else
                freeCols.push_back(c);
        }
    }
    DenseMatrix<Scalar> basis(cols, static_cast<Eigen::Index>(freeCols.size()));
    basis.setZero();
    for (std::size_t v = 0; v < freeCols.size(); ++v) {
        const Eigen::Index f = freeCols[v];
        basis(f, static_cast<Eigen::Index>(v)) = Scalar(1);
        for (std::size_t k = 0; k < info.pivotCols.size(); ++k)
            basis(info.pivotCols[k], static_cast<Eigen::Index>(v)) =
                -m(static_cast<Eigen::Index>(k), f);
    }
    return basis;
}

}  // namespace maxload
