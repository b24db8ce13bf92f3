#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lrh/shrinkage.hpp"
#include "lrh/svd.hpp"
#include "lrh/transform.hpp"

using namespace lrh;
using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

TEST_CASE("svd_of reconstructs, orders, and fixes signs")
{
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial)
    {
        const Matrix m = test::random_matrix(rng, 5, 8);
        const SvdTriple<double> svd = svd_of<double>(m);
        CHECK((svd.reconstruct() - m).norm() <= 1e-10 * m.norm());
        for (Index i = 0; i + 1 < svd.count(); ++i)
            CHECK(svd.singular_values[i] >= svd.singular_values[i + 1]);
        for (Index i = 0; i < svd.count(); ++i)
        {
            Index pivot = 0;
            svd.left.col(i).cwiseAbs().maxCoeff(&pivot);
            CHECK(svd.left(pivot, i) >= 0.0);
        }
    }
}

TEST_CASE("svd_of is deterministic")
{
    Rng rng(22);
    const Matrix m = test::random_matrix(rng, 6, 6);
    const SvdTriple<double> a = svd_of<double>(m);
    const SvdTriple<double> b = svd_of<double>(m);
    CHECK(a.left == b.left);
    CHECK(a.right == b.right);
    CHECK(a.singular_values == b.singular_values);
}

TEST_CASE("tsvd_estimate keeps an exact-rank matrix intact")
{
    Rng rng(23);
    const Matrix w = test::random_rank_r(rng, 5, 7, 2);
    const auto id = build_transform<double>(TransformKind::identity, 7);
    const Matrix est = tsvd_estimate<double>(w, id, 2);
    CHECK((est - w).norm() <= 1e-10 * w.norm());
}

TEST_CASE("tsvd_estimate with rank zero returns the complement only")
{
    Rng rng(24);
    const Matrix w = test::random_matrix(rng, 4, 6);
    const auto id = build_transform<double>(TransformKind::identity, 6);
    CHECK(tsvd_estimate<double>(w, id, 0) == Matrix::Zero(4, 6));
}

TEST_CASE("tsvd residual matches the trailing spectrum (EYM identity)")
{
    Rng rng(25);
    for (int trial = 0; trial < 10; ++trial)
    {
        const Matrix w = test::random_matrix(rng, 5, 6);
        const auto id = build_transform<double>(TransformKind::identity, 6);
        const Vector sv = svd_of<double>(w).singular_values;
        for (Index r : {1, 2, 3})
        {
            const double residual_sq = (w - tsvd_estimate<double>(w, id, r)).squaredNorm();
            const double trailing_sq = sv.tail(sv.size() - r).squaredNorm();
            CHECK(std::abs(residual_sq - trailing_sq) <= 1e-10 * trailing_sq);
        }
    }
}

TEST_CASE("tsvd beats random rank-r candidates")
{
    Rng rng(26);
    const Matrix w = test::random_matrix(rng, 5, 6);
    const auto id = build_transform<double>(TransformKind::identity, 6);
    for (Index r : {1, 2, 3})
    {
        const double best = (w - tsvd_estimate<double>(w, id, r)).norm();
        for (int candidate = 0; candidate < 1000; ++candidate)
            CHECK(best <= (w - test::random_rank_r(rng, 5, 6, r)).norm());
    }
}

TEST_CASE("tsvd returns W when the projected part already has low rank")
{
    Rng rng(27);
    const Index n = 9;
    const Matrix u = test::random_matrix(rng, 5, n); // projector of rank n - 5 = 4
    const auto pi = build_transform<double>(TransformKind::null_space_projector, n, u);
    const Matrix w = test::random_matrix(rng, 6, n);
    // rank(W Pi) <= 4 = r, so truncation changes nothing
    const Matrix est = tsvd_estimate<double>(w, pi, 4);
    CHECK((est - w).norm() <= 1e-10 * w.norm());
}

TEST_CASE("tsvd preserves the complement term for projector transforms")
{
    Rng rng(28);
    const Index n = 10;
    const Matrix u = test::random_matrix(rng, 3, n);
    const auto pi = build_transform<double>(TransformKind::null_space_projector, n, u);
    const Matrix w = test::random_matrix(rng, 5, n);
    for (Index r : {1, 2, 4})
    {
        const Matrix est = tsvd_estimate<double>(w, pi, r);
        CHECK((pi.apply_complement(est) - pi.apply_complement(w)).norm() <= 1e-12 * w.norm());
        // rank of the transformed estimate is at most r
        const Vector sv = svd_of<double>(pi.apply(est)).singular_values;
        CHECK(sv[r] <= 1e-10 * sv[0]);
    }
}

TEST_CASE("tsvd_estimate rejects ranks beyond min(m, n)")
{
    Rng rng(29);
    const Matrix w = test::random_matrix(rng, 3, 5);
    const auto id = build_transform<double>(TransformKind::identity, 5);
    CHECK_THROWS_AS(tsvd_estimate<double>(w, id, 4), std::invalid_argument);
    CHECK_THROWS_AS(tsvd_estimate<double>(w, id, -1), std::invalid_argument);
}
