// Hankel matrix construction, projection, and signal read-out.
#ifndef LRH_HANKEL_HPP
#define LRH_HANKEL_HPP

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "lrh/types.hpp"

namespace lrh
{

/// Dimensions of an m-by-n Hankel matrix holding a length-N signal,
/// normalized to the wide orientation m <= n.
struct HankelShape
{
    Index rows = 0;
    Index cols = 0;
    Index signal_length = 0;

    static HankelShape from_signal(Index signal_length, Index rows)
    {
        if (rows < 1 || signal_length < rows)
            throw std::invalid_argument("HankelShape: need 1 <= rows <= signal length");
        HankelShape s;
        s.rows = rows;
        s.cols = signal_length - rows + 1;
        s.signal_length = signal_length;
        if (s.rows > s.cols)
            throw std::invalid_argument("HankelShape: rows exceed cols; use rows <= (N+1)/2");
        return s;
    }
};

/// m-by-(N-m+1) Hankel matrix with entry (i, j) = signal[i + j].
template <typename Scalar>
MatrixX<Scalar> build_hankel(const VectorX<Scalar>& signal, Index rows)
{
    const Index n_signal = signal.size();
    if (rows < 1 || n_signal < rows)
        throw std::invalid_argument("build_hankel: signal shorter than requested row count");
    const Index cols = n_signal - rows + 1;
    MatrixX<Scalar> h(rows, cols);
    for (Index j = 0; j < cols; ++j)
        h.col(j) = signal.segment(j, rows);
    return h;
}

/// Two-block mosaic [H(u); H(y)] of equally long sequences.
template <typename Scalar>
MatrixX<Scalar> build_mosaic(const VectorX<Scalar>& u, const VectorX<Scalar>& y, Index block_rows)
{
    if (u.size() != y.size())
        throw std::invalid_argument("build_mosaic: input and output sequences differ in length");
    MatrixX<Scalar> top = build_hankel<Scalar>(u, block_rows);
    MatrixX<Scalar> bottom = build_hankel<Scalar>(y, block_rows);
    MatrixX<Scalar> d(2 * block_rows, top.cols());
    d.topRows(block_rows) = top;
    d.bottomRows(block_rows) = bottom;
    return d;
}

/// Orthogonal projection onto the Hankel subspace: every skew diagonal is
/// replaced by its arithmetic mean. Idempotent, and the Frobenius-nearest
/// Hankel matrix to the input.
template <typename Scalar>
MatrixX<Scalar> hankel_project(const MatrixX<Scalar>& m)
{
    if (!m.allFinite())
        throw std::invalid_argument("hankel_project: input has non-finite entries");
    const Index rows = m.rows();
    const Index cols = m.cols();
    const Index diags = rows + cols - 1;
    VectorX<Scalar> sums = VectorX<Scalar>::Zero(diags);
    VectorX<Scalar> counts = VectorX<Scalar>::Zero(diags);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
        {
            sums[i + j] += m(i, j);
            counts[i + j] += Scalar(1);
        }
    MatrixX<Scalar> out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            out(i, j) = sums[i + j] / counts[i + j];
    return out;
}

/// Signal read-out: first column followed by the last row (excluding its
/// first element). Exact inverse of build_hankel on Hankel input.
template <typename Scalar>
VectorX<Scalar> hankel_signal(const MatrixX<Scalar>& m)
{
    const Index rows = m.rows();
    const Index cols = m.cols();
    VectorX<Scalar> signal(rows + cols - 1);
    signal.head(rows) = m.col(0);
    for (Index j = 1; j < cols; ++j)
        signal[rows - 1 + j] = m(rows - 1, j);
    return signal;
}

/// Largest relative spread (max minus min) over the skew diagonals; zero
/// iff the matrix is exactly Hankel.
template <typename Scalar>
Scalar hankel_spread(const MatrixX<Scalar>& m)
{
    const Index rows = m.rows();
    const Index cols = m.cols();
    Scalar worst = Scalar(0);
    for (Index s = 0; s < rows + cols - 1; ++s)
    {
        const Index i_lo = std::max(Index(0), s - (cols - 1));
        const Index i_hi = std::min(rows - 1, s);
        Scalar lo = m(i_lo, s - i_lo);
        Scalar hi = lo;
        for (Index i = i_lo + 1; i <= i_hi; ++i)
        {
            const Scalar v = m(i, s - i);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        worst = std::max(worst, hi - lo);
    }
    const Scalar scale = m.norm();
    return scale > Scalar(0) ? worst / scale : worst;
}

} // namespace lrh

#endif // LRH_HANKEL_HPP
