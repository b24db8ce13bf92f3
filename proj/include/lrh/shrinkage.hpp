// Single-shot SVD estimators: truncation, piecewise-linear and optimal
// shrinkage laws, noise-level estimation, and the data-driven shrinker
// built on an empirical D-transform.
#ifndef LRH_SHRINKAGE_HPP
#define LRH_SHRINKAGE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lrh/marchenko_pastur.hpp"
#include "lrh/svd.hpp"
#include "lrh/transform.hpp"
#include "lrh/types.hpp"

namespace lrh
{

enum class ShrinkageRule
{
    truncate_rank,
    hard_threshold,
    soft_threshold,
    optimal,
    data_driven,
};

/// A shrinkage rule with its parameters. Thresholds and the noise level
/// default to data-driven choices when left unset; an explicit noise level
/// always overrides estimation.
template <typename Scalar>
struct ShrinkagePolicy
{
    ShrinkageRule rule = ShrinkageRule::truncate_rank;
    Index rank = 0;                        // truncate_rank, data_driven
    std::optional<Scalar> threshold;       // hard/soft: explicit tau
    std::optional<Scalar> noise_level;     // sigma, when known

    static ShrinkagePolicy truncate(Index r)
    {
        ShrinkagePolicy p;
        p.rule = ShrinkageRule::truncate_rank;
        p.rank = r;
        return p;
    }
    static ShrinkagePolicy hard(std::optional<Scalar> tau = {}, std::optional<Scalar> sigma = {})
    {
        ShrinkagePolicy p;
        p.rule = ShrinkageRule::hard_threshold;
        p.threshold = tau;
        p.noise_level = sigma;
        return p;
    }
    static ShrinkagePolicy soft(std::optional<Scalar> tau = {}, std::optional<Scalar> sigma = {})
    {
        ShrinkagePolicy p;
        p.rule = ShrinkageRule::soft_threshold;
        p.threshold = tau;
        p.noise_level = sigma;
        return p;
    }
    static ShrinkagePolicy optimal(std::optional<Scalar> sigma = {})
    {
        ShrinkagePolicy p;
        p.rule = ShrinkageRule::optimal;
        p.noise_level = sigma;
        return p;
    }
    static ShrinkagePolicy data_driven(Index r)
    {
        ShrinkagePolicy p;
        p.rule = ShrinkageRule::data_driven;
        p.rank = r;
        return p;
    }
};

namespace detail
{

// Wide-orientation view of a shape: p <= q with beta = p/q. Callers with
// more rows than columns are handled through this transparent swap.
struct Aspect
{
    Index p; // min dimension: number of singular values
    Index q; // max dimension: the "n" of the asymptotic laws
    double beta;
};

inline Aspect aspect_of(Index rows, Index cols)
{
    Aspect a;
    a.p = std::min(rows, cols);
    a.q = std::max(rows, cols);
    a.beta = static_cast<double>(a.p) / static_cast<double>(a.q);
    return a;
}

// Lower median by index: entry ceil(k/2) of a descending spectrum (1-based).
template <typename Scalar>
Scalar lower_median(const VectorX<Scalar>& descending)
{
    return descending[(descending.size() - 1) / 2];
}

} // namespace detail

/// Singular values of W * Pi, descending.
template <typename Scalar>
VectorX<Scalar> spectrum(const MatrixX<Scalar>& w, const Transform<Scalar>& pi)
{
    Eigen::BDCSVD<MatrixX<Scalar>> svd(pi.apply(w));
    return svd.singularValues();
}

/// Asymptotically MSE-optimal shrinker for white noise of level sigma:
/// eta(w) = (n sigma^2 / w) sqrt((w^2/(n sigma^2) - beta - 1)^2 - 4 beta)
/// above the detection threshold (1 + sqrt(beta)) sqrt(n) sigma, zero below.
template <typename Scalar>
Scalar optimal_shrinker(Scalar w, Index n, Scalar beta, Scalar sigma)
{
    if (!(beta > Scalar(0) && beta <= Scalar(1)))
        throw std::invalid_argument("optimal_shrinker: beta must lie in (0, 1]");
    if (!(sigma > Scalar(0)))
        throw std::invalid_argument("optimal_shrinker: sigma must be positive");
    const Scalar noise_sq = Scalar(n) * sigma * sigma;
    const Scalar threshold = (Scalar(1) + std::sqrt(beta)) * std::sqrt(Scalar(n)) * sigma;
    if (!(w > threshold))
        return Scalar(0);
    const Scalar shifted = w * w / noise_sq - beta - Scalar(1);
    const Scalar radicand = std::max(Scalar(0), shifted * shifted - Scalar(4) * beta);
    return noise_sq / w * std::sqrt(radicand);
}

/// Optimal hard threshold tau_H for white noise of level sigma.
template <typename Scalar>
Scalar hard_threshold_value(Scalar beta, Scalar sigma, Index n)
{
    if (!(beta > Scalar(0) && beta <= Scalar(1)))
        throw std::invalid_argument("hard_threshold_value: beta must lie in (0, 1]");
    const Scalar coef =
        std::sqrt(Scalar(2) * (beta + Scalar(1)) +
                  Scalar(8) * beta /
                      (beta + Scalar(1) + std::sqrt(beta * beta + Scalar(14) * beta + Scalar(1))));
    return coef * sigma * std::sqrt(Scalar(n));
}

/// Optimal soft threshold tau_S = (1 + sqrt(beta)) sigma sqrt(n).
template <typename Scalar>
Scalar soft_threshold_value(Scalar beta, Scalar sigma, Index n)
{
    if (!(beta > Scalar(0) && beta <= Scalar(1)))
        throw std::invalid_argument("soft_threshold_value: beta must lie in (0, 1]");
    return (Scalar(1) + std::sqrt(beta)) * sigma * std::sqrt(Scalar(n));
}

/// Noise level estimate sigma_hat = w_med / sqrt(n * z_med(beta)) from the
/// median singular value of W * Pi and the Marchenko-Pastur median.
template <typename Scalar>
Scalar estimate_noise_level(const MatrixX<Scalar>& w, const Transform<Scalar>& pi)
{
    const detail::Aspect a = detail::aspect_of(w.rows(), w.cols());
    if (a.p < 2)
        throw std::invalid_argument("estimate_noise_level: need at least two singular values");
    const VectorX<Scalar> values = spectrum(w, pi);
    const Scalar w_med = detail::lower_median(values);
    if (!(w_med > Scalar(0)))
        throw std::invalid_argument("estimate_noise_level: degenerate input, median singular value is zero");
    const double z_med = mp_median(a.beta);
    return w_med / std::sqrt(Scalar(a.q) * Scalar(z_med));
}

/// Empirical measure of the noise singular values: the trailing spectrum
/// w_{r+1..p} of W * Pi, with the adjusted ratio beta_hat = (p - r)/(q - r).
/// The bulk edge is estimated by the largest trailing value.
template <typename Scalar>
struct SpectralMeasure
{
    VectorX<Scalar> trailing; // descending
    Index rows = 0;           // p
    Index cols = 0;           // q
    Index rank = 0;           // r

    Scalar beta_hat() const { return Scalar(rows - rank) / Scalar(cols - rank); }
    Scalar bulk_edge() const { return trailing.size() > 0 ? trailing[0] : Scalar(0); }

    static SpectralMeasure from_spectrum(const VectorX<Scalar>& descending, Index rows, Index cols,
                                         Index rank)
    {
        if (rank < 0 || rank >= descending.size())
            throw std::invalid_argument("SpectralMeasure: rank must satisfy 0 <= r < p");
        SpectralMeasure m;
        m.trailing = descending.segment(rank, descending.size() - rank);
        m.rows = std::min(rows, cols);
        m.cols = std::max(rows, cols);
        m.rank = rank;
        return m;
    }
};

template <typename Scalar>
struct DTransformValue
{
    Scalar value;
    Scalar derivative;
    Scalar phi; // the Stieltjes-type factor, exposed for diagnostics
};

/// Empirical D-transform D(z) = phi(z) psi(z) and its derivative, with
///   phi(z) = mean of z / (z^2 - w_i^2) over the trailing values,
///   psi(z) = beta_hat * phi(z) + (1 - beta_hat) / z.
/// Only defined above the bulk edge; evaluation at or below the largest
/// trailing value is a pole-proximity error.
template <typename Scalar>
DTransformValue<Scalar> dtransform(Scalar z, const SpectralMeasure<Scalar>& measure)
{
    if (!(z > measure.bulk_edge()))
        throw std::invalid_argument("dtransform: evaluation point must exceed the bulk edge");
    const Index count = measure.trailing.size();
    Scalar phi = Scalar(0);
    Scalar phi_prime = Scalar(0);
    for (Index i = 0; i < count; ++i)
    {
        const Scalar w2 = measure.trailing[i] * measure.trailing[i];
        const Scalar gap = z * z - w2;
        phi += z / gap;
        phi_prime -= (z * z + w2) / (gap * gap);
    }
    phi /= Scalar(count);
    phi_prime /= Scalar(count);
    const Scalar beta = measure.beta_hat();
    const Scalar psi = beta * phi + (Scalar(1) - beta) / z;
    const Scalar psi_prime = beta * phi_prime - (Scalar(1) - beta) / (z * z);
    DTransformValue<Scalar> out;
    out.value = phi * psi;
    out.derivative = phi_prime * psi + phi * psi_prime;
    out.phi = phi;
    return out;
}

namespace detail
{

// Coefficient reconstruction shared by every shrinkage estimator:
// sum_i coeffs_i u_i v_i^T + W (I - Pi).
template <typename Scalar>
MatrixX<Scalar> shrink_reconstruct(const MatrixX<Scalar>& w, const Transform<Scalar>& pi,
                                   const SvdTriple<Scalar>& svd, const VectorX<Scalar>& coeffs)
{
    return svd.reconstruct(coeffs) + pi.apply_complement(w);
}

} // namespace detail

/// Rank-r truncation of W * Pi plus the untouched complement W (I - Pi).
template <typename Scalar>
MatrixX<Scalar> tsvd_estimate(const MatrixX<Scalar>& w, const Transform<Scalar>& pi, Index rank)
{
    const SvdTriple<Scalar> svd = svd_of(pi.apply(w));
    if (rank < 0 || rank > svd.count())
        throw std::invalid_argument("tsvd_estimate: rank must satisfy 0 <= r <= min(m, n)");
    VectorX<Scalar> coeffs = VectorX<Scalar>::Zero(svd.count());
    coeffs.head(rank) = svd.singular_values.head(rank);
    return detail::shrink_reconstruct(w, pi, svd, coeffs);
}

/// Result of the data-driven shrinker. Leading components whose singular
/// value does not clear the empirical bulk edge are shrunk to zero and
/// flagged rather than treated as an error.
template <typename Scalar>
struct DataDrivenResult
{
    MatrixX<Scalar> estimate;
    VectorX<Scalar> shrunk_values;  // per singular value, zero past the rank
    std::vector<bool> below_bulk;   // per leading component i < r
};

/// Shrinkage coefficients eta_i = -2 D(w_i) / D'(w_i) for the r leading
/// values under the given measure, clamped to [0, w_i]; values at or below
/// the bulk edge shrink to zero and are flagged. Trailing coefficients are
/// always zero.
template <typename Scalar>
void data_driven_coefficients(const VectorX<Scalar>& singular_values, Index rank,
                              const SpectralMeasure<Scalar>& measure, VectorX<Scalar>& coeffs,
                              std::vector<bool>& below_bulk)
{
    coeffs = VectorX<Scalar>::Zero(singular_values.size());
    below_bulk.assign(static_cast<std::size_t>(rank), false);
    const Scalar edge = measure.bulk_edge();
    for (Index i = 0; i < rank; ++i)
    {
        const Scalar wi = singular_values[i];
        if (!(wi > edge))
        {
            below_bulk[static_cast<std::size_t>(i)] = true;
            continue;
        }
        const DTransformValue<Scalar> d = dtransform(wi, measure);
        const Scalar eta = Scalar(-2) * d.value / d.derivative;
        coeffs[i] = std::clamp(eta, Scalar(0), wi);
    }
}

/// OptShrink-style estimator: shrink the r leading singular values of
/// W * Pi by eta_i = -2 D(w_i) / D'(w_i) under the empirical measure of the
/// trailing spectrum, zero the rest, and add back W (I - Pi).
template <typename Scalar>
DataDrivenResult<Scalar> data_driven_shrinker(const MatrixX<Scalar>& w, const Transform<Scalar>& pi,
                                              Index rank)
{
    const SvdTriple<Scalar> svd = svd_of(pi.apply(w));
    if (rank < 0 || rank >= svd.count())
        throw std::invalid_argument("data_driven_shrinker: rank must satisfy 0 <= r < min(m, n)");
    const detail::Aspect a = detail::aspect_of(w.rows(), w.cols());
    const SpectralMeasure<Scalar> measure =
        SpectralMeasure<Scalar>::from_spectrum(svd.singular_values, a.p, a.q, rank);

    DataDrivenResult<Scalar> out;
    data_driven_coefficients(svd.singular_values, rank, measure, out.shrunk_values,
                             out.below_bulk);
    out.estimate = detail::shrink_reconstruct(w, pi, svd, out.shrunk_values);
    return out;
}

/// Apply a shrinkage policy to W under Pi. Thresholds and noise levels left
/// unset are derived from the data (estimate_noise_level and the optimal
/// threshold formulas).
template <typename Scalar>
MatrixX<Scalar> apply_shrinkage(const MatrixX<Scalar>& w, const Transform<Scalar>& pi,
                                const ShrinkagePolicy<Scalar>& policy)
{
    if (policy.rule == ShrinkageRule::data_driven)
        return data_driven_shrinker(w, pi, policy.rank).estimate;
    if (policy.rule == ShrinkageRule::truncate_rank)
        return tsvd_estimate(w, pi, policy.rank);

    const detail::Aspect a = detail::aspect_of(w.rows(), w.cols());
    auto resolve_sigma = [&]() -> Scalar {
        if (policy.noise_level)
        {
            if (!(*policy.noise_level > Scalar(0)))
                throw std::invalid_argument("apply_shrinkage: noise level must be positive");
            return *policy.noise_level;
        }
        return estimate_noise_level(w, pi);
    };

    const SvdTriple<Scalar> svd = svd_of(pi.apply(w));
    VectorX<Scalar> coeffs(svd.count());
    switch (policy.rule)
    {
    case ShrinkageRule::hard_threshold:
    {
        const Scalar tau = policy.threshold
                               ? *policy.threshold
                               : hard_threshold_value(Scalar(a.beta), resolve_sigma(), a.q);
        if (tau < Scalar(0))
            throw std::invalid_argument("apply_shrinkage: threshold must be nonnegative");
        for (Index i = 0; i < svd.count(); ++i)
            coeffs[i] = svd.singular_values[i] >= tau ? svd.singular_values[i] : Scalar(0);
        break;
    }
    case ShrinkageRule::soft_threshold:
    {
        const Scalar tau = policy.threshold
                               ? *policy.threshold
                               : soft_threshold_value(Scalar(a.beta), resolve_sigma(), a.q);
        if (tau < Scalar(0))
            throw std::invalid_argument("apply_shrinkage: threshold must be nonnegative");
        for (Index i = 0; i < svd.count(); ++i)
            coeffs[i] = std::max(Scalar(0), svd.singular_values[i] - tau);
        break;
    }
    case ShrinkageRule::optimal:
    {
        const Scalar sigma = resolve_sigma();
        for (Index i = 0; i < svd.count(); ++i)
            coeffs[i] = optimal_shrinker(svd.singular_values[i], a.q, Scalar(a.beta), sigma);
        break;
    }
    default:
        throw std::logic_error("apply_shrinkage: unreachable rule");
    }
    return detail::shrink_reconstruct(w, pi, svd, coeffs);
}

} // namespace lrh

#endif // LRH_SHRINKAGE_HPP
