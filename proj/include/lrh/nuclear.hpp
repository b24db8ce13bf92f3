// Nuclear-norm regularized denoising:
//   minimize 1/2 ||W - X||_F^2 + tau ||X Pi||_*
// over Hankel X (or over all of R^{m x n} in the unstructured relaxation).
//
// Solved by ADMM with unit penalty on the split X Pi = Y: a quadratic
// data-fidelity step in the Hankel signal coordinates, singular value
// soft-thresholding of Y, and a scaled dual update. The Hankel constraint
// is enforced exactly through the parameterization X = Hank(h).
#ifndef LRH_NUCLEAR_HPP
#define LRH_NUCLEAR_HPP

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>

#include "lrh/hankel.hpp"
#include "lrh/slra.hpp"
#include "lrh/svd.hpp"
#include "lrh/transform.hpp"
#include "lrh/types.hpp"

namespace lrh
{

enum class StructureMode
{
    hankel,
    none,
};

/// Default stopping rule for the nuclear-norm solver: primal and dual
/// residuals at 1e-6 relative, within the usual iteration cap.
inline IterationConfig nuclear_default_config()
{
    IterationConfig cfg;
    cfg.epsilon = 1e-6;
    return cfg;
}

namespace detail
{

// Adjoint of the Hankel embedding: per-skew-diagonal sums.
template <typename Scalar>
VectorX<Scalar> hankel_adjoint(const MatrixX<Scalar>& g)
{
    const Index rows = g.rows();
    const Index cols = g.cols();
    VectorX<Scalar> sums = VectorX<Scalar>::Zero(rows + cols - 1);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            sums[i + j] += g(i, j);
    return sums;
}

template <typename Scalar>
VectorX<Scalar> skew_diagonal_counts(Index rows, Index cols)
{
    VectorX<Scalar> counts = VectorX<Scalar>::Zero(rows + cols - 1);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            counts[i + j] += Scalar(1);
    return counts;
}

// Singular value soft-thresholding.
template <typename Scalar>
MatrixX<Scalar> svt(const MatrixX<Scalar>& m, Scalar tau)
{
    SvdTriple<Scalar> svd = svd_of(m);
    VectorX<Scalar> coeffs = (svd.singular_values.array() - tau).cwiseMax(Scalar(0)).matrix();
    return svd.reconstruct(coeffs);
}

} // namespace detail

template <typename Scalar>
std::pair<MatrixX<Scalar>, IterationTrace> nuclear_norm_denoise(
    const MatrixX<Scalar>& w, const Transform<Scalar>& pi, Scalar tau,
    const IterationConfig& cfg = nuclear_default_config(),
    StructureMode mode = StructureMode::hankel)
{
    cfg.validate();
    if (tau < Scalar(0))
        throw std::invalid_argument("nuclear_norm_denoise: tau must be nonnegative");
    if (pi.dim() != w.cols())
        throw std::invalid_argument("nuclear_norm_denoise: transform dimension mismatch");

    const Index rows = w.rows();
    const Index cols = w.cols();
    const Scalar rho = Scalar(1); // fixed unit step
    const Scalar tol = Scalar(cfg.epsilon);

    const MatrixX<Scalar>& pi_mat = pi.matrix;

    // Hankel mode works in the signal coordinates h with X = Hank(h); the
    // data-fidelity step solves (S^T S + rho A^T A) h = S^T W + rho A^T (Y-U)
    // with A h = Hank(h) Pi, prefactored once.
    const Index n_signal = rows + cols - 1;
    Eigen::LDLT<MatrixX<Scalar>> signal_solver;
    Eigen::LLT<MatrixX<Scalar>> dense_solver; // unstructured mode, I + rho Pi Pi^T
    if (mode == StructureMode::hankel)
    {
        MatrixX<Scalar> design(rows * cols, n_signal);
        for (Index s = 0; s < n_signal; ++s)
        {
            MatrixX<Scalar> basis_pi = MatrixX<Scalar>::Zero(rows, cols);
            const Index i_lo = std::max(Index(0), s - (cols - 1));
            const Index i_hi = std::min(rows - 1, s);
            for (Index i = i_lo; i <= i_hi; ++i)
                basis_pi.row(i) = pi_mat.row(s - i);
            design.col(s) = Eigen::Map<const VectorX<Scalar>>(basis_pi.data(), rows * cols);
        }
        MatrixX<Scalar> normal = rho * (design.transpose() * design);
        normal.diagonal() += detail::skew_diagonal_counts<Scalar>(rows, cols);
        signal_solver.compute(normal);
    }
    else if (pi.kind != TransformKind::identity)
    {
        dense_solver.compute(MatrixX<Scalar>::Identity(cols, cols) +
                             rho * pi_mat * pi_mat.transpose());
    }

    auto fidelity_step = [&](const MatrixX<Scalar>& target) -> MatrixX<Scalar> {
        // argmin_X 1/2 ||W - X||^2 + rho/2 ||X Pi - target||^2 over the mode's
        // feasible set.
        if (mode == StructureMode::hankel)
        {
            const VectorX<Scalar> rhs = detail::hankel_adjoint<Scalar>(w) +
                                        rho * detail::hankel_adjoint<Scalar>(
                                                  MatrixX<Scalar>(target * pi_mat.transpose()));
            return build_hankel<Scalar>(signal_solver.solve(rhs).eval(), rows);
        }
        if (pi.kind == TransformKind::identity)
            return (w + rho * target) / (Scalar(1) + rho);
        const MatrixX<Scalar> rhs = w + rho * target * pi_mat.transpose();
        return dense_solver.solve(rhs.transpose()).transpose();
    };

    // Norm of the splitting operator's adjoint applied to a matrix, taken in
    // the mode's primal coordinates.
    auto adjoint_norm = [&](const MatrixX<Scalar>& g) -> double {
        const MatrixX<Scalar> g_pit = g * pi_mat.transpose();
        if (mode == StructureMode::hankel)
            return static_cast<double>(detail::hankel_adjoint<Scalar>(g_pit).norm());
        return static_cast<double>(g_pit.norm());
    };

    MatrixX<Scalar> x = mode == StructureMode::hankel ? hankel_project(w) : w;
    MatrixX<Scalar> split = pi.apply(x);
    MatrixX<Scalar> dual = MatrixX<Scalar>::Zero(rows, cols);

    IterationTrace trace;
    MatrixX<Scalar> best_x = x;
    double best_residual = std::numeric_limits<double>::infinity();
    for (Index iter = 0; iter < cfg.max_iters; ++iter)
    {
        x = fidelity_step(split - dual);
        const MatrixX<Scalar> x_pi = pi.apply(x);
        const MatrixX<Scalar> split_prev = split;
        split = detail::svt<Scalar>(x_pi + dual, tau / rho);
        dual += x_pi - split;

        const double primal = static_cast<double>((x_pi - split).norm());
        const double primal_scale =
            std::max({1.0, static_cast<double>(x_pi.norm()), static_cast<double>(split.norm())});
        const double dual_res = static_cast<double>(rho) * adjoint_norm(split - split_prev);
        const double dual_scale = std::max(1.0, static_cast<double>(rho) * adjoint_norm(dual));
        const double residual = std::max(primal / primal_scale, dual_res / dual_scale);
        trace.residual_history.push_back(residual);
        ++trace.iterations;
        if (residual < best_residual)
        {
            best_residual = residual;
            best_x = x;
        }
        if (residual < static_cast<double>(tol))
        {
            trace.converged = true;
            break;
        }
    }
    return {trace.converged ? std::move(x) : std::move(best_x), std::move(trace)};
}

/// Objective value 1/2 ||W - X||_F^2 + tau ||X Pi||_*.
template <typename Scalar>
Scalar nuclear_objective(const MatrixX<Scalar>& w, const Transform<Scalar>& pi, Scalar tau,
                         const MatrixX<Scalar>& x)
{
    Eigen::BDCSVD<MatrixX<Scalar>> svd(pi.apply(x));
    return Scalar(0.5) * (w - x).squaredNorm() + tau * svd.singularValues().sum();
}

} // namespace lrh

#endif // LRH_NUCLEAR_HPP
