// Structure-enforcing iterative estimators: alternating rank truncation /
// Hankel projection, and its data-driven shrinkage variant.
#ifndef LRH_SLRA_HPP
#define LRH_SLRA_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "lrh/hankel.hpp"
#include "lrh/shrinkage.hpp"
#include "lrh/transform.hpp"
#include "lrh/types.hpp"

namespace lrh
{

struct IterationConfig
{
    double epsilon = 1e-5; // relative convergence tolerance
    Index max_iters = 500;
    // Algorithm-2 switch: rebuild the noise measure from the current
    // iterate's trailing spectrum (the literal pseudocode) or freeze the
    // measure estimated from the initial matrix.
    bool refresh_noise_measure = true;

    void validate() const
    {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("IterationConfig: epsilon must be positive");
        if (max_iters < 1)
            throw std::invalid_argument("IterationConfig: max_iters must be at least 1");
    }
};

struct IterationTrace
{
    Index iterations = 0;
    bool converged = false;
    std::vector<double> residual_history; // relative gap per iteration
};

namespace detail
{

// Shared alternation: step(W1) produces the unstructured update W2, the
// Hankel projection pulls it back, and the loop stops when the relative
// gap ||W1 - W2|| < eps ||W1||. An exactly zero gap counts as converged.
template <typename Scalar, typename StepFn>
std::pair<MatrixX<Scalar>, IterationTrace> alternate_project(const MatrixX<Scalar>& w,
                                                             const IterationConfig& cfg,
                                                             StepFn&& step)
{
    cfg.validate();
    MatrixX<Scalar> w1 = w;
    IterationTrace trace;
    trace.residual_history.reserve(static_cast<std::size_t>(cfg.max_iters));
    for (Index iter = 0; iter < cfg.max_iters; ++iter)
    {
        const MatrixX<Scalar> w2 = step(w1);
        w1 = hankel_project(w2);
        const double gap = static_cast<double>((w1 - w2).norm());
        const double scale = static_cast<double>(w1.norm());
        trace.residual_history.push_back(scale > 0.0 ? gap / scale : 0.0);
        ++trace.iterations;
        if (gap == 0.0 || gap < cfg.epsilon * scale)
        {
            trace.converged = true;
            break;
        }
    }
    return {std::move(w1), std::move(trace)};
}

} // namespace detail

/// Alternating rank-r truncation and Hankel projection, seeded with W.
/// Returns the last (exactly Hankel) iterate; non-convergence within the
/// iteration cap is reported through the trace, not as an error.
template <typename Scalar>
std::pair<MatrixX<Scalar>, IterationTrace> slra_iterative(const MatrixX<Scalar>& w,
                                                          const Transform<Scalar>& pi, Index rank,
                                                          const IterationConfig& cfg = {})
{
    return detail::alternate_project<Scalar>(
        w, cfg, [&](const MatrixX<Scalar>& w1) { return tsvd_estimate(w1, pi, rank); });
}

/// Iterative low-rank Hankel denoiser: per sweep, the r leading singular
/// values of the iterate are shrunk by the data-driven law under the
/// empirical measure of the trailing spectrum, the complement W1 (I - Pi)
/// is carried over unchanged, and the result is projected back onto the
/// Hankel subspace.
template <typename Scalar>
std::pair<MatrixX<Scalar>, IterationTrace> lrhd(const MatrixX<Scalar>& w,
                                                const Transform<Scalar>& pi, Index rank,
                                                const IterationConfig& cfg = {})
{
    const detail::Aspect a = detail::aspect_of(w.rows(), w.cols());
    if (rank < 0 || rank >= a.p)
        throw std::invalid_argument("lrhd: rank must satisfy 0 <= r < min(m, n)");

    std::optional<SpectralMeasure<Scalar>> frozen;
    if (!cfg.refresh_noise_measure)
    {
        const VectorX<Scalar> w_values = spectrum(w, pi);
        frozen = SpectralMeasure<Scalar>::from_spectrum(w_values, a.p, a.q, rank);
    }

    return detail::alternate_project<Scalar>(w, cfg, [&](const MatrixX<Scalar>& w1) {
        const SvdTriple<Scalar> svd = svd_of(pi.apply(w1));
        const SpectralMeasure<Scalar> measure =
            frozen ? *frozen
                   : SpectralMeasure<Scalar>::from_spectrum(svd.singular_values, a.p, a.q, rank);
        VectorX<Scalar> coeffs;
        std::vector<bool> below_bulk;
        data_driven_coefficients(svd.singular_values, rank, measure, coeffs, below_bulk);
        return detail::shrink_reconstruct(w1, pi, svd, coeffs);
    });
}

} // namespace lrh

#endif // LRH_SLRA_HPP
