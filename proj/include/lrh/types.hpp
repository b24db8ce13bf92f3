// Common dense types and scalar-generic aliases used across the library.
#ifndef LRH_TYPES_HPP
#define LRH_TYPES_HPP

#include <Eigen/Core>

namespace lrh
{

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

} // namespace lrh

#endif // LRH_TYPES_HPP
