// SVD wrapper with a deterministic sign convention, plus numerical rank.
#ifndef LRH_SVD_HPP
#define LRH_SVD_HPP

#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "lrh/types.hpp"

namespace lrh
{

/// Thin SVD of an m-by-n matrix: k = min(m, n) triples with singular values
/// in decreasing order. Each left vector is normalized so its largest-
/// magnitude entry is nonnegative, making decompositions reproducible.
template <typename Scalar>
struct SvdTriple
{
    MatrixX<Scalar> left;            // m x k
    VectorX<Scalar> singular_values; // k, descending
    MatrixX<Scalar> right;           // n x k

    Index count() const { return singular_values.size(); }

    /// Sum_i coeffs[i] * u_i * v_i^T.
    MatrixX<Scalar> reconstruct(const VectorX<Scalar>& coeffs) const
    {
        return left * coeffs.asDiagonal() * right.transpose();
    }

    MatrixX<Scalar> reconstruct() const { return reconstruct(singular_values); }
};

template <typename Scalar>
SvdTriple<Scalar> svd_of(const MatrixX<Scalar>& m)
{
    Eigen::BDCSVD<MatrixX<Scalar>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdTriple<Scalar> out;
    out.left = svd.matrixU();
    out.singular_values = svd.singularValues();
    out.right = svd.matrixV();
    for (Index i = 0; i < out.count(); ++i)
    {
        Index pivot = 0;
        out.left.col(i).cwiseAbs().maxCoeff(&pivot);
        if (out.left(pivot, i) < Scalar(0))
        {
            out.left.col(i) = -out.left.col(i);
            out.right.col(i) = -out.right.col(i);
        }
    }
    return out;
}

/// Number of singular values above tol * (largest singular value).
template <typename Scalar>
Index check_rank(const MatrixX<Scalar>& m, Scalar tol = Scalar(1e-8))
{
    if (!(tol > Scalar(0) && tol < Scalar(1)))
        throw std::invalid_argument("check_rank: tol must lie in (0, 1)");
    const VectorX<Scalar> w = svd_of(m).singular_values;
    if (w.size() == 0 || w[0] <= Scalar(0))
        return 0;
    const Scalar cutoff = tol * w[0];
    Index rank = 0;
    while (rank < w.size() && w[rank] > cutoff)
        ++rank;
    return rank;
}

} // namespace lrh

#endif // LRH_SVD_HPP
