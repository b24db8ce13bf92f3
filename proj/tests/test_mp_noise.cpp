#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lrh/marchenko_pastur.hpp"
#include "lrh/shrinkage.hpp"
#include "lrh/svd.hpp"
#include "lrh/transform.hpp"

using namespace lrh;
using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

// Independent oracle for beta = 1: with t = 4 sin^2(theta) the CDF is
// (4 theta + 2 sin 2 theta) / (2 pi), so the median solves
// 4 theta + 2 sin(2 theta) = pi. Newton iteration from theta = 0.4.
static double mp_median_square_oracle()
{
    double theta = 0.4;
    for (int it = 0; it < 60; ++it)
    {
        const double f = 4.0 * theta + 2.0 * std::sin(2.0 * theta) - M_PI;
        const double df = 4.0 + 4.0 * std::cos(2.0 * theta);
        theta -= f / df;
    }
    const double s = std::sin(theta);
    return 4.0 * s * s;
}

TEST_CASE("mp_median at beta = 1 matches the closed-form equation")
{
    const double oracle = mp_median_square_oracle();
    CHECK(mp_median(1.0) == doctest::Approx(oracle).epsilon(0.0).scale(1.0).epsilon(1e-8));
    // sanity: the known value is about 0.6528
    CHECK(oracle == doctest::Approx(0.65278).epsilon(1e-3));
}

TEST_CASE("mp_median lies inside the support and brackets the CDF")
{
    for (double beta : {0.05, 0.25, 0.5, 0.8, 1.0})
    {
        const double median = mp_median(beta);
        CHECK(median > mp_support_lower(beta));
        CHECK(median < mp_support_upper(beta));
        CHECK(mp_cdf(median - 1e-6, beta) < 0.5);
        CHECK(mp_cdf(median + 1e-6, beta) > 0.5);
    }
}

TEST_CASE("mp density integrates to one")
{
    for (double beta : {0.1, 0.3, 0.7, 1.0})
        CHECK(mp_cdf(mp_support_upper(beta) - 1e-14, beta) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mp_median agrees with a large random matrix")
{
    // Monte Carlo oracle: eigenvalues of (1/n) Z Z^T for a 400 x 1600 iid
    // Gaussian matrix concentrate around the beta = 1/4 law.
    Rng rng(31);
    const Index m = 400, n = 1600;
    const Matrix z = test::random_matrix(rng, m, n);
    const Vector sv = svd_of<double>(z).singular_values;
    Vector squared = sv.cwiseProduct(sv) / double(n);
    const double empirical = squared[(m - 1) / 2]; // about the median
    CHECK(mp_median(0.25) == doctest::Approx(empirical).epsilon(0.02));
}

TEST_CASE("mp_median rejects beta outside (0, 1]")
{
    CHECK_THROWS_AS(mp_median(0.0), std::invalid_argument);
    CHECK_THROWS_AS(mp_median(1.5), std::invalid_argument);
}

TEST_CASE("estimate_noise_level is scale equivariant")
{
    Rng rng(32);
    const Matrix w = test::random_matrix(rng, 6, 10);
    const auto id = build_transform<double>(TransformKind::identity, 10);
    const double base = estimate_noise_level<double>(w, id);
    const double scaled = estimate_noise_level<double>(Matrix(2.5 * w), id);
    CHECK(scaled == doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("estimate_noise_level uses the lower-median singular value")
{
    // diag(5, 3, 1): the median of the descending spectrum is 3
    Matrix w = Matrix::Zero(3, 3);
    w(0, 0) = 5;
    w(1, 1) = 3;
    w(2, 2) = 1;
    const auto id = build_transform<double>(TransformKind::identity, 3);
    const double expected = 3.0 / std::sqrt(3.0 * mp_median(1.0));
    CHECK(estimate_noise_level<double>(w, id) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("estimate_noise_level is transpose invariant")
{
    Rng rng(33);
    const Matrix w = test::random_matrix(rng, 5, 9);
    const auto id_n = build_transform<double>(TransformKind::identity, 9);
    const auto id_m = build_transform<double>(TransformKind::identity, 5);
    const double direct = estimate_noise_level<double>(w, id_n);
    const double transposed = estimate_noise_level<double>(Matrix(w.transpose()), id_m);
    CHECK(direct == doctest::Approx(transposed).epsilon(1e-12));
}

TEST_CASE("estimate_noise_level rejects degenerate input")
{
    const Matrix zero = Matrix::Zero(4, 4);
    const auto id = build_transform<double>(TransformKind::identity, 4);
    CHECK_THROWS_AS(estimate_noise_level<double>(zero, id), std::invalid_argument);
    Matrix tiny(1, 3);
    tiny << 1, 2, 3;
    const auto id3 = build_transform<double>(TransformKind::identity, 3);
    CHECK_THROWS_AS(estimate_noise_level<double>(tiny, id3), std::invalid_argument);
}

TEST_CASE("estimate_noise_level is consistent on pure Gaussian noise")
{
    // 200 x 200 iid noise at sigma = 0.1: the estimate lands within 5% in
    // at least 95 of 100 seeded runs.
    const auto id = build_transform<double>(TransformKind::identity, 200);
    int hits = 0;
    for (int seed = 0; seed < 100; ++seed)
    {
        Rng rng(derive_seed(777, seed));
        const Matrix w = 0.1 * test::random_matrix(rng, 200, 200);
        const double sigma_hat = estimate_noise_level<double>(w, id);
        if (sigma_hat >= 0.095 && sigma_hat <= 0.105)
            ++hits;
    }
    CHECK(hits >= 95);
}
