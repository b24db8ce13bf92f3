// Shared deterministic generators for the test suites.
#ifndef LRH_TEST_HELPERS_HPP
#define LRH_TEST_HELPERS_HPP

#include "lrh/rng.hpp"
#include "lrh/types.hpp"

namespace lrh::test
{

inline MatrixX<double> random_matrix(Rng& rng, Index rows, Index cols)
{
    MatrixX<double> m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = rng.gaussian();
    return m;
}

inline VectorX<double> random_vector(Rng& rng, Index size)
{
    VectorX<double> v(size);
    for (Index i = 0; i < size; ++i)
        v[i] = rng.gaussian();
    return v;
}

inline MatrixX<double> random_hankel(Rng& rng, Index rows, Index cols)
{
    VectorX<double> signal = random_vector(rng, rows + cols - 1);
    MatrixX<double> m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = signal[i + j];
    return m;
}

inline MatrixX<double> random_rank_r(Rng& rng, Index rows, Index cols, Index rank)
{
    return random_matrix(rng, rows, rank) * random_matrix(rng, rank, cols);
}

} // namespace lrh::test

#endif // LRH_TEST_HELPERS_HPP
