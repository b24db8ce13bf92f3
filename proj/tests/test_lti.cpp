#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lrh/instance_json.hpp"
#include "lrh/lti.hpp"
#include "lrh/svd.hpp"

using namespace lrh;
using namespace lrh::lti;

TEST_CASE("random systems are stable with bounded pole magnitudes")
{
    const LtiSystem scalar = random_stable_system(1, 5);
    CHECK(std::abs(scalar.a(0, 0)) < 1.0);

    for (int seed = 0; seed < 20; ++seed)
    {
        const LtiSystem sys = random_stable_system(4, seed);
        CHECK(sys.spectral_radius() <= 0.95 + 1e-12);
        CHECK(sys.order() == 4);
    }
    const LtiSystem odd = random_stable_system(5, 7);
    CHECK(odd.spectral_radius() <= 0.95 + 1e-12);
}

TEST_CASE("equal seeds give identical systems")
{
    const LtiSystem a = random_stable_system(4, 1234);
    const LtiSystem b = random_stable_system(4, 1234);
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
    CHECK(a.c == b.c);
    CHECK(a.d == b.d);
    const LtiSystem c = random_stable_system(4, 1235);
    CHECK((a.a - c.a).norm() > 0.0);
}

TEST_CASE("impulse_response recursion")
{
    LtiSystem sys;
    sys.a = Matrix::Constant(1, 1, 0.5);
    sys.b = Vector::Constant(1, 1.0);
    sys.c = Eigen::RowVectorXd::Constant(1, 1.0);
    sys.d = 0.0;
    Vector expected(4);
    expected << 0, 1, 0.5, 0.25;
    CHECK(impulse_response(sys, 4) == expected);

    sys.d = 2.0;
    expected[0] = 2.0;
    CHECK(impulse_response(sys, 4) == expected);
}

TEST_CASE("markov parameter Hankel matrix has rank equal to the order")
{
    for (int seed = 0; seed < 10; ++seed)
    {
        const LtiSystem sys = random_stable_system(4, derive_seed(81, seed));
        const Vector tail = markov_parameters(sys, 40);
        const Matrix h = build_hankel<double>(tail, 8);
        CHECK(check_rank<double>(h) == 4);
    }
}

TEST_CASE("simulate matches the impulse response on an impulse input")
{
    const LtiSystem sys = random_stable_system(4, 82);
    Vector impulse = Vector::Zero(30);
    impulse[0] = 1.0;
    const Vector simulated = simulate(sys, impulse);
    const Vector direct = impulse_response(sys, 30);
    CHECK((simulated - direct).norm() <= 1e-14 * direct.norm());
}

TEST_CASE("simulate is linear and maps zero to zero")
{
    Rng rng(83);
    const LtiSystem sys = random_stable_system(3, 84);
    const Vector u1 = test::random_vector(rng, 50);
    const Vector u2 = test::random_vector(rng, 50);
    const Vector sum = simulate(sys, u1 + u2);
    const Vector parts = simulate(sys, u1) + simulate(sys, u2);
    CHECK((sum - parts).norm() <= 1e-12 * sum.norm());
    CHECK(simulate(sys, Vector::Zero(20)) == Vector::Zero(20));
}

TEST_CASE("impulse responses decay within a geometric envelope")
{
    // log-envelope regression: slope of log(max_{j >= k} |g_j|) is negative
    for (int seed = 0; seed < 5; ++seed)
    {
        const LtiSystem sys = random_stable_system(4, derive_seed(85, seed));
        const Vector g = markov_parameters(sys, 160);
        Vector envelope(g.size());
        double running = 0.0;
        for (Index k = g.size() - 1; k >= 0; --k)
        {
            running = std::max(running, std::abs(g[k]));
            envelope[k] = std::max(running, 1e-300);
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const Index n = envelope.size();
        for (Index k = 0; k < n; ++k)
        {
            const double x = double(k);
            const double y = std::log(envelope[k]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
        CHECK(slope < 0.0);
    }
}

TEST_CASE("check_persistency")
{
    Vector constant = Vector::Constant(10, 2.0);
    CHECK_FALSE(check_persistency(constant, 2));
    CHECK(check_persistency(constant, 1));

    Vector impulse = Vector::Zero(3);
    impulse[0] = 1.0;
    CHECK(check_persistency(impulse, 1));

    for (int seed = 0; seed < 100; ++seed)
    {
        Rng rng(derive_seed(86, seed));
        const Vector u = test::random_vector(rng, 96);
        CHECK(check_persistency(u, 12));
    }

    Vector tiny = Vector::Zero(4);
    CHECK_THROWS_AS(check_persistency(tiny, 3), std::invalid_argument);
}

TEST_CASE("trajectory instance contracts")
{
    const LtiSystem sys = random_stable_system(4, 87);
    const TrajectoryInstance inst = make_trajectory_instance(sys, 96, 8, 0.1, 88);
    CHECK(inst.measurement.rows() == 8);
    CHECK(inst.measurement.cols() == 89);
    CHECK(inst.rank == 4);
    // the projector annihilates the input block
    const Matrix u_block = build_hankel<double>(inst.input, 8);
    CHECK((u_block * inst.transform.matrix).norm() <= 1e-10 * u_block.norm());
    // mosaic rank identity at the paper configuration
    CHECK(inst.mosaic().rows() == 16);
    CHECK(inst.mosaic().cols() == 89);
    CHECK(check_rank<double>(inst.mosaic()) == 12);
    // only the output carries noise
    CHECK(inst.noisy_output != inst.output);

    const TrajectoryInstance clean = make_trajectory_instance(sys, 96, 8, 0.0, 88);
    CHECK(clean.measurement == clean.noise_free);
}

TEST_CASE("impulse instance contracts")
{
    const LtiSystem sys = random_stable_system(4, 89);
    const ImpulseInstance inst = make_impulse_instance(sys, 40, 8, 0.01, 90);
    CHECK(inst.measurement.rows() == 8);
    CHECK(inst.measurement.cols() == 33);
    CHECK(inst.rank == 4);
    CHECK(check_rank<double>(inst.noise_free) == 4);
    CHECK(inst.transform.kind == TransformKind::identity);
    CHECK(inst.response == markov_parameters(sys, 40));

    const ImpulseInstance clean = make_impulse_instance(sys, 40, 8, 0.0, 90);
    CHECK(clean.measurement == clean.noise_free);
}

TEST_CASE("instances are deterministic in their seeds")
{
    const LtiSystem sys = random_stable_system(4, 91);
    const TrajectoryInstance a = make_trajectory_instance(sys, 96, 8, 0.1, 92);
    const TrajectoryInstance b = make_trajectory_instance(sys, 96, 8, 0.1, 92);
    CHECK(a.noisy_output == b.noisy_output);
    CHECK(a.input == b.input);
    const TrajectoryInstance c = make_trajectory_instance(sys, 96, 8, 0.1, 93);
    CHECK((a.noisy_output - c.noisy_output).norm() > 0.0);
}

TEST_CASE("instances serialize to JSON and back")
{
    const LtiSystem sys = random_stable_system(4, 94);
    const TrajectoryInstance traj = make_trajectory_instance(sys, 48, 6, 0.05, 95);
    const TrajectoryInstance traj_back = trajectory_from_json(to_json(traj));
    CHECK(traj_back.input == traj.input);
    CHECK(traj_back.output == traj.output);
    CHECK(traj_back.noisy_output == traj.noisy_output);
    CHECK(traj_back.measurement == traj.measurement);
    CHECK(traj_back.system.a == traj.system.a);
    CHECK(traj_back.sigma2 == traj.sigma2);
    CHECK(traj_back.seed == traj.seed);

    const ImpulseInstance imp = make_impulse_instance(sys, 40, 8, 0.001, 96);
    const ImpulseInstance imp_back = impulse_from_json(to_json(imp));
    CHECK(imp_back.response == imp.response);
    CHECK(imp_back.noisy_response == imp.noisy_response);
    CHECK(imp_back.measurement == imp.measurement);
    CHECK(imp_back.rank == imp.rank);
}
