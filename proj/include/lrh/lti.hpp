// Random stable SISO systems and the two case-study problem instances:
// input-output trajectory denoising and impulse response denoising.
#ifndef LRH_LTI_HPP
#define LRH_LTI_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "lrh/hankel.hpp"
#include "lrh/rng.hpp"
#include "lrh/svd.hpp"
#include "lrh/transform.hpp"
#include "lrh/types.hpp"

namespace lrh::lti
{

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// Discrete-time SISO state-space realization with spectral radius < 1.
struct LtiSystem
{
    Matrix a; // n_x x n_x
    Vector b; // n_x
    Eigen::RowVectorXd c; // 1 x n_x
    double d = 0.0;

    Index order() const { return a.rows(); }

    double spectral_radius() const
    {
        return a.eigenvalues().cwiseAbs().maxCoeff();
    }
};

namespace detail
{

inline Matrix controllability(const LtiSystem& sys)
{
    const Index n = sys.order();
    Matrix ctrb(n, n);
    Vector col = sys.b;
    for (Index k = 0; k < n; ++k)
    {
        ctrb.col(k) = col;
        col = sys.a * col;
    }
    return ctrb;
}

inline Matrix observability(const LtiSystem& sys)
{
    const Index n = sys.order();
    Matrix obsv(n, n);
    Eigen::RowVectorXd row = sys.c;
    for (Index k = 0; k < n; ++k)
    {
        obsv.row(k) = row;
        row = row * sys.a;
    }
    return obsv;
}

inline double condition_number(const Matrix& m)
{
    const Vector w = svd_of<double>(m).singular_values;
    const double smallest = w[w.size() - 1];
    return smallest > 0.0 ? w[0] / smallest : std::numeric_limits<double>::infinity();
}

} // namespace detail

/// Draw a random stable system of the given order. Poles are sampled as
/// conjugate pairs (plus one real pole for odd orders) uniformly in the disk
/// of radius 0.95 and realized as a real block-diagonal state matrix; B, C,
/// and D are standard Gaussian. Draws are rejected until the square
/// controllability and observability matrices are well conditioned, so the
/// Hankel rank identities hold numerically.
inline LtiSystem random_stable_system(Index order, std::uint64_t seed)
{
    if (order < 1)
        throw std::invalid_argument("random_stable_system: order must be positive");
    constexpr double pole_radius = 0.95;
    constexpr double max_condition = 1e8;
    constexpr int max_attempts = 256;

    Rng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        LtiSystem sys;
        sys.a = Matrix::Zero(order, order);
        Index at = 0;
        for (; at + 1 < order; at += 2)
        {
            const double radius = pole_radius * std::sqrt(rng.uniform());
            const double angle = M_PI * rng.uniform();
            const double re = radius * std::cos(angle);
            const double im = radius * std::sin(angle);
            sys.a(at, at) = re;
            sys.a(at, at + 1) = im;
            sys.a(at + 1, at) = -im;
            sys.a(at + 1, at + 1) = re;
        }
        if (at < order)
            sys.a(at, at) = pole_radius * (2.0 * rng.uniform() - 1.0);

        sys.b = Vector(order);
        for (Index i = 0; i < order; ++i)
            sys.b[i] = rng.gaussian();
        sys.c = Eigen::RowVectorXd(order);
        for (Index i = 0; i < order; ++i)
            sys.c[i] = rng.gaussian();
        sys.d = rng.gaussian();

        if (sys.spectral_radius() > pole_radius + 1e-12)
            continue;
        if (detail::condition_number(detail::controllability(sys)) >= max_condition)
            continue;
        if (detail::condition_number(detail::observability(sys)) >= max_condition)
            continue;
        return sys;
    }
    throw std::runtime_error("random_stable_system: rejection sampling failed");
}

/// First N impulse response samples: g_0 = D, g_k = C A^{k-1} B.
inline Vector impulse_response(const LtiSystem& sys, Index length)
{
    if (length < 1)
        throw std::invalid_argument("impulse_response: length must be positive");
    Vector g(length);
    g[0] = sys.d;
    Vector state = sys.b;
    for (Index k = 1; k < length; ++k)
    {
        g[k] = sys.c * state;
        state = sys.a * state;
    }
    return g;
}

/// First N Markov parameters g_k = C A^{k-1} B, k = 1..N (the impulse
/// response with the feedthrough sample dropped). The Hankel matrix of this
/// sequence has rank equal to the system order.
inline Vector markov_parameters(const LtiSystem& sys, Index length)
{
    if (length < 1)
        throw std::invalid_argument("markov_parameters: length must be positive");
    Vector g(length);
    Vector state = sys.b;
    for (Index k = 0; k < length; ++k)
    {
        g[k] = sys.c * state;
        state = sys.a * state;
    }
    return g;
}

/// Simulate from zero initial state: y_k = C x_k + D u_k, x_{k+1} = A x_k + B u_k.
inline Vector simulate(const LtiSystem& sys, const Vector& input)
{
    const Index length = input.size();
    Vector output(length);
    Vector state = Vector::Zero(sys.order());
    for (Index k = 0; k < length; ++k)
    {
        output[k] = sys.c * state + sys.d * input[k];
        state = sys.a * state + sys.b * input[k];
    }
    return output;
}

/// True iff the order-L Hankel matrix of the input has full row rank.
inline bool check_persistency(const Vector& input, Index order, double tol = 1e-8)
{
    if (order < 1)
        throw std::invalid_argument("check_persistency: order must be positive");
    if (input.size() < 2 * order - 1)
        throw std::invalid_argument("check_persistency: sequence too short for the requested order");
    const Matrix h = build_hankel<double>(input, order);
    return check_rank<double>(h, tol) == order;
}

/// One trajectory-denoising instance: W = Hankel of the noisy output,
/// X = Hankel of the noise-free output, Pi annihilates the (exactly known)
/// input block, r = system order.
struct TrajectoryInstance
{
    LtiSystem system;
    Vector input;        // u, exact
    Vector output;       // y, noise free
    Vector noisy_output; // y + v
    Index block_rows = 0;
    double sigma2 = 0.0;
    std::uint64_t seed = 0;

    Matrix noise_free;  // X
    Matrix measurement; // W
    Transform<double> transform;
    Index rank = 0;

    Matrix mosaic() const { return build_mosaic<double>(input, output, block_rows); }
};

/// One impulse-response-denoising instance: Hankel matrices of the clean and
/// noisy Markov parameter sequences, identity transform, r = system order.
struct ImpulseInstance
{
    LtiSystem system;
    Vector response;       // g_1..g_N
    Vector noisy_response; // g + v
    Index block_rows = 0;
    double sigma2 = 0.0;
    std::uint64_t seed = 0;

    Matrix noise_free;  // X
    Matrix measurement; // W
    Transform<double> transform;
    Index rank = 0;
};

inline TrajectoryInstance make_trajectory_instance(const LtiSystem& sys, Index length,
                                                   Index block_rows, double sigma2,
                                                   std::uint64_t seed)
{
    if (!(sigma2 >= 0.0))
        throw std::invalid_argument("make_trajectory_instance: sigma2 must be nonnegative");
    const Index excitation_order = block_rows + sys.order();
    if (length < 2 * excitation_order - 1)
        throw std::invalid_argument("make_trajectory_instance: trajectory too short");

    Rng rng(seed);
    Vector u(length);
    bool exciting = false;
    for (int attempt = 0; attempt < 32 && !exciting; ++attempt)
    {
        for (Index k = 0; k < length; ++k)
            u[k] = rng.gaussian();
        exciting = check_persistency(u, excitation_order);
    }
    if (!exciting)
        throw std::runtime_error("make_trajectory_instance: input never persistently exciting");

    TrajectoryInstance inst;
    inst.system = sys;
    inst.input = u;
    inst.output = simulate(sys, u);
    inst.noisy_output = inst.output;
    const double sigma = std::sqrt(sigma2);
    for (Index k = 0; k < length; ++k)
        inst.noisy_output[k] += sigma * rng.gaussian();
    inst.block_rows = block_rows;
    inst.sigma2 = sigma2;
    inst.seed = seed;

    const Matrix u_block = build_hankel<double>(u, block_rows);
    inst.noise_free = build_hankel<double>(inst.output, block_rows);
    inst.measurement = build_hankel<double>(inst.noisy_output, block_rows);
    inst.transform =
        build_transform<double>(TransformKind::null_space_projector, u_block.cols(), u_block);
    inst.rank = sys.order();
    return inst;
}

inline ImpulseInstance make_impulse_instance(const LtiSystem& sys, Index length, Index block_rows,
                                             double sigma2, std::uint64_t seed)
{
    if (!(sigma2 >= 0.0))
        throw std::invalid_argument("make_impulse_instance: sigma2 must be nonnegative");
    if (length < block_rows)
        throw std::invalid_argument("make_impulse_instance: response shorter than block rows");

    ImpulseInstance inst;
    inst.system = sys;
    inst.response = markov_parameters(sys, length);
    inst.noisy_response = inst.response;
    Rng rng(seed);
    const double sigma = std::sqrt(sigma2);
    for (Index k = 0; k < length; ++k)
        inst.noisy_response[k] += sigma * rng.gaussian();
    inst.block_rows = block_rows;
    inst.sigma2 = sigma2;
    inst.seed = seed;

    inst.noise_free = build_hankel<double>(inst.response, block_rows);
    inst.measurement = build_hankel<double>(inst.noisy_response, block_rows);
    inst.transform = build_transform<double>(TransformKind::identity, inst.noise_free.cols());
    inst.rank = sys.order();
    return inst;
}

} // namespace lrh::lti

#endif // LRH_LTI_HPP
