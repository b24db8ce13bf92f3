// Right-hand transformation matrices Pi defining the generalized Hankel
// structure rank(X * Pi) = r.
#ifndef LRH_TRANSFORM_HPP
#define LRH_TRANSFORM_HPP

#include <optional>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "lrh/svd.hpp"
#include "lrh/types.hpp"

namespace lrh
{

enum class TransformKind
{
    identity,
    anti_diagonal_flip,
    null_space_projector,
};

/// An n-by-n transformation applied on the right of the data matrix.
///
/// identity            - plain Hankel structure.
/// anti_diagonal_flip  - permutation with entry 1 at i + j = n - 1 (zero
///                       based); maps Hankel to Toeplitz.
/// null_space_projector- symmetric idempotent Pi with U * Pi = 0 for a known
///                       full-row-rank block U (rows that carry no noise).
///
/// The multiplication helpers special-case the identity so that W * Pi and
/// W * (I - Pi) are exact there.
template <typename Scalar>
struct Transform
{
    TransformKind kind = TransformKind::identity;
    MatrixX<Scalar> matrix;              // n x n
    std::optional<MatrixX<Scalar>> source; // the U block, for projectors

    Index dim() const { return matrix.rows(); }

    bool is_idempotent_kind() const
    {
        return kind == TransformKind::identity || kind == TransformKind::null_space_projector;
    }

    /// W * Pi.
    MatrixX<Scalar> apply(const MatrixX<Scalar>& w) const
    {
        if (kind == TransformKind::identity)
            return w;
        return w * matrix;
    }

    /// W * (I - Pi).
    MatrixX<Scalar> apply_complement(const MatrixX<Scalar>& w) const
    {
        if (kind == TransformKind::identity)
            return MatrixX<Scalar>::Zero(w.rows(), w.cols());
        return w - w * matrix;
    }
};

template <typename Scalar>
Transform<Scalar> build_transform(TransformKind kind, Index n,
                                  std::optional<MatrixX<Scalar>> u_block = {})
{
    if (n < 1)
        throw std::invalid_argument("build_transform: dimension must be positive");
    Transform<Scalar> t;
    t.kind = kind;
    switch (kind)
    {
    case TransformKind::identity:
        t.matrix = MatrixX<Scalar>::Identity(n, n);
        break;
    case TransformKind::anti_diagonal_flip:
        t.matrix = MatrixX<Scalar>::Zero(n, n);
        for (Index i = 0; i < n; ++i)
            t.matrix(i, n - 1 - i) = Scalar(1);
        break;
    case TransformKind::null_space_projector:
    {
        if (!u_block)
            throw std::invalid_argument("build_transform: projector requires the U block");
        const MatrixX<Scalar>& u = *u_block;
        if (u.cols() != n)
            throw std::invalid_argument("build_transform: U block must have n columns");
        if (u.rows() >= n)
            throw std::invalid_argument("build_transform: U block must have fewer rows than columns");
        // Orthonormal-basis route: Pi = I - V_r V_r^T with V_r spanning the
        // row space of U. Better conditioned than the explicit inverse of
        // U U^T.
        const SvdTriple<Scalar> svd = svd_of(u);
        const Scalar cutoff = Scalar(1e-12) * svd.singular_values[0];
        for (Index i = 0; i < svd.count(); ++i)
            if (!(svd.singular_values[i] > cutoff))
                throw std::invalid_argument(
                    "build_transform: U U^T is singular (input not persistently exciting)");
        const MatrixX<Scalar>& v = svd.right; // n x rows(U), orthonormal
        t.matrix = MatrixX<Scalar>::Identity(n, n) - v * v.transpose();
        t.source = u;
        break;
    }
    }
    return t;
}

} // namespace lrh

#endif // LRH_TRANSFORM_HPP
