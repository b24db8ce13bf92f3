// Monte Carlo benchmark harness: runs every estimator on shared noisy
// instances of the two case studies and reports the noise reduction measure
// F = 100 (1 - ||X - Xhat|| / ||X - W||) per trial and method.
#ifndef LRH_BENCH_HPP
#define LRH_BENCH_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lrh/io.hpp"
#include "lrh/lti.hpp"
#include "lrh/nuclear.hpp"
#include "lrh/rng.hpp"
#include "lrh/shrinkage.hpp"
#include "lrh/slra.hpp"
#include "lrh/transform.hpp"

namespace lrh::bench
{

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// The implemented estimators. The local-optimization SLRA package compared
/// in the source study is an external tool and is reported as
/// not-implemented in output metadata rather than silently omitted.
enum class MethodId
{
    tsvd,
    iter,
    nuc,
    shrink,
    hard,
    dd,
    lrhd,
};

inline constexpr std::array<MethodId, 7> all_methods = {
    MethodId::tsvd, MethodId::iter, MethodId::nuc,  MethodId::shrink,
    MethodId::hard, MethodId::dd,   MethodId::lrhd,
};

inline const char* method_name(MethodId id)
{
    switch (id)
    {
    case MethodId::tsvd: return "TSVD";
    case MethodId::iter: return "Iter";
    case MethodId::nuc: return "Nuc";
    case MethodId::shrink: return "Shrink";
    case MethodId::hard: return "Hard";
    case MethodId::dd: return "DD";
    case MethodId::lrhd: return "LRHD";
    }
    return "?";
}

inline std::optional<MethodId> method_from_name(std::string name)
{
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (MethodId id : all_methods)
    {
        std::string canonical = method_name(id);
        std::transform(canonical.begin(), canonical.end(), canonical.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (name == canonical)
            return id;
    }
    return std::nullopt;
}

enum class ExampleKind
{
    trajectory,
    impulse,
};

inline const char* example_name(ExampleKind kind)
{
    return kind == ExampleKind::trajectory ? "trajectory" : "impulse";
}

struct BenchmarkConfig
{
    ExampleKind example = ExampleKind::trajectory;
    Index order = 4;      // n_x
    Index block_rows = 8; // m
    Index length = 96;    // N
    double sigma2 = 0.1;
    Index trials = 100;
    std::uint64_t seed = 42;
    double epsilon = 1e-5;
    Index max_iters = 500;
    bool fixed_system = false; // reuse one random system across trials
    bool measure_time = false; // wall_ms stays 0 unless enabled, keeping
                               // output files reproducible byte for byte

    void validate() const
    {
        if (trials < 1)
            throw std::invalid_argument("BenchmarkConfig: trials must be at least 1");
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("BenchmarkConfig: sigma2 must be positive");
        if (order < 1 || block_rows <= order)
            throw std::invalid_argument("BenchmarkConfig: need block_rows > order >= 1");
        if (length < block_rows)
            throw std::invalid_argument("BenchmarkConfig: length must cover the block rows");
        if (!(epsilon > 0.0) || max_iters < 1)
            throw std::invalid_argument("BenchmarkConfig: invalid iteration settings");
    }
};

struct TrialRecord
{
    Index trial = 0;
    MethodId method = MethodId::tsvd;
    double score = 0.0; // F, rounded to 12 significant digits
    bool converged = true;
    Index iterations = 0; // 0 for single-shot estimators
    double wall_ms = 0.0;
    std::uint64_t instance_hash = 0;
};

/// Noise reduction measure F = 100 (1 - ||X - Xhat||_F / ||X - W||_F).
inline double noise_reduction(const Matrix& noise_free, const Matrix& estimate,
                              const Matrix& measurement)
{
    const double denom = (noise_free - measurement).norm();
    if (denom == 0.0)
        throw std::invalid_argument("noise_reduction: degenerate instance with X = W");
    return 100.0 * (1.0 - (noise_free - estimate).norm() / denom);
}

/// One shared problem instance: every method in a trial sees this triple.
struct ProblemInstance
{
    Matrix measurement; // W
    Matrix noise_free;  // X
    Transform<double> transform;
    Index rank = 0;
    std::uint64_t hash = 0;
};

namespace detail
{

inline void hash_bytes(std::uint64_t& h, const void* data, std::size_t size)
{
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i)
    {
        h ^= bytes[i];
        h *= 0x100000001B3ULL; // FNV-1a
    }
}

inline std::uint64_t instance_digest(const Matrix& w, const Matrix& pi, Index rank)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const Index w_size = w.size();
    hash_bytes(h, &w_size, sizeof(w_size));
    hash_bytes(h, w.data(), sizeof(double) * static_cast<std::size_t>(w.size()));
    hash_bytes(h, pi.data(), sizeof(double) * static_cast<std::size_t>(pi.size()));
    hash_bytes(h, &rank, sizeof(rank));
    return h;
}

} // namespace detail

inline ProblemInstance make_instance(const BenchmarkConfig& cfg, Index trial)
{
    const std::uint64_t sys_stream = cfg.fixed_system ? 0 : 2 * static_cast<std::uint64_t>(trial);
    const std::uint64_t sys_seed = derive_seed(cfg.seed, sys_stream);
    const std::uint64_t inst_seed =
        derive_seed(cfg.seed, 2 * static_cast<std::uint64_t>(trial) + 1);
    const lti::LtiSystem sys = lti::random_stable_system(cfg.order, sys_seed);

    ProblemInstance inst;
    if (cfg.example == ExampleKind::trajectory)
    {
        lti::TrajectoryInstance t =
            lti::make_trajectory_instance(sys, cfg.length, cfg.block_rows, cfg.sigma2, inst_seed);
        inst.measurement = std::move(t.measurement);
        inst.noise_free = std::move(t.noise_free);
        inst.transform = std::move(t.transform);
        inst.rank = t.rank;
    }
    else
    {
        lti::ImpulseInstance t =
            lti::make_impulse_instance(sys, cfg.length, cfg.block_rows, cfg.sigma2, inst_seed);
        inst.measurement = std::move(t.measurement);
        inst.noise_free = std::move(t.noise_free);
        inst.transform = std::move(t.transform);
        inst.rank = t.rank;
    }
    inst.hash = detail::instance_digest(inst.measurement, inst.transform.matrix, inst.rank);
    return inst;
}

struct MethodRun
{
    Matrix estimate;
    bool converged = true;
    Index iterations = 0;
};

inline MethodRun run_method(MethodId id, const ProblemInstance& inst, double epsilon,
                            Index max_iters)
{
    const Matrix& w = inst.measurement;
    const Transform<double>& pi = inst.transform;
    MethodRun out;
    switch (id)
    {
    case MethodId::tsvd:
        out.estimate = tsvd_estimate<double>(w, pi, inst.rank);
        break;
    case MethodId::iter:
    {
        IterationConfig cfg{epsilon, max_iters};
        auto [estimate, trace] = slra_iterative<double>(w, pi, inst.rank, cfg);
        out.estimate = std::move(estimate);
        out.converged = trace.converged;
        out.iterations = trace.iterations;
        break;
    }
    case MethodId::nuc:
    {
        const double sigma = estimate_noise_level<double>(w, pi);
        const lrh::detail::Aspect a = lrh::detail::aspect_of(w.rows(), w.cols());
        const double tau = soft_threshold_value<double>(a.beta, sigma, a.q);
        IterationConfig cfg = nuclear_default_config();
        cfg.max_iters = max_iters;
        auto [estimate, trace] = nuclear_norm_denoise<double>(w, pi, tau, cfg);
        out.estimate = std::move(estimate);
        out.converged = trace.converged;
        out.iterations = trace.iterations;
        break;
    }
    case MethodId::shrink:
        out.estimate = apply_shrinkage<double>(w, pi, ShrinkagePolicy<double>::optimal());
        break;
    case MethodId::hard:
        out.estimate = apply_shrinkage<double>(w, pi, ShrinkagePolicy<double>::hard());
        break;
    case MethodId::dd:
        out.estimate = data_driven_shrinker<double>(w, pi, inst.rank).estimate;
        break;
    case MethodId::lrhd:
    {
        IterationConfig cfg{epsilon, max_iters};
        auto [estimate, trace] = lrhd<double>(w, pi, inst.rank, cfg);
        out.estimate = std::move(estimate);
        out.converged = trace.converged;
        out.iterations = trace.iterations;
        break;
    }
    }
    return out;
}

/// Worker count for trial-level parallelism, from the LRHD_WORKERS
/// environment variable (the only environment input); defaults to the
/// hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("LRHD_WORKERS"))
    {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1)
            return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run the full benchmark: trials x methods records, deterministic in the
/// root seed regardless of the worker count. Per trial, one system and one
/// noise realization are shared by all methods.
inline std::vector<TrialRecord> run_benchmark(const BenchmarkConfig& cfg)
{
    cfg.validate();
    const std::size_t method_count = all_methods.size();
    std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials) * method_count);

    auto run_trial = [&](Index trial) {
        const ProblemInstance inst = make_instance(cfg, trial);
        for (std::size_t k = 0; k < method_count; ++k)
        {
            const MethodId id = all_methods[k];
            const auto started = std::chrono::steady_clock::now();
            const MethodRun run = run_method(id, inst, cfg.epsilon, cfg.max_iters);
            const auto finished = std::chrono::steady_clock::now();

            TrialRecord rec;
            rec.trial = trial;
            rec.method = id;
            rec.score = io::round_to_digits(
                noise_reduction(inst.noise_free, run.estimate, inst.measurement));
            rec.converged = run.converged;
            rec.iterations = run.iterations;
            if (cfg.measure_time)
                rec.wall_ms = io::round_to_digits(
                    std::chrono::duration<double, std::milli>(finished - started).count());
            rec.instance_hash = inst.hash;
            records[static_cast<std::size_t>(trial) * method_count + k] = rec;
        }
    };

    const unsigned workers =
        std::min<unsigned>(worker_count(), static_cast<unsigned>(cfg.trials));
    if (workers <= 1)
    {
        for (Index trial = 0; trial < cfg.trials; ++trial)
            run_trial(trial);
    }
    else
    {
        std::atomic<Index> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back([&] {
                for (Index trial = next.fetch_add(1); trial < cfg.trials;
                     trial = next.fetch_add(1))
                    run_trial(trial);
            });
        for (std::thread& t : pool)
            t.join();
    }
    return records; // already ordered by (trial, method)
}

struct MethodSummary
{
    MethodId method = MethodId::tsvd;
    Index trials = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
    double converged_rate = 0.0;
    double iterations_mean = 0.0;
};

namespace detail
{

// Quantile by linear interpolation at position q (n - 1) of the sorted data.
inline double quantile(const std::vector<double>& sorted, double q)
{
    if (sorted.empty())
        return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace detail

inline std::vector<MethodSummary> summarize(const std::vector<TrialRecord>& records)
{
    std::vector<MethodSummary> out;
    for (MethodId id : all_methods)
    {
        std::vector<double> scores;
        Index converged = 0;
        double iteration_sum = 0.0;
        for (const TrialRecord& rec : records)
        {
            if (rec.method != id)
                continue;
            scores.push_back(rec.score);
            converged += rec.converged ? 1 : 0;
            iteration_sum += static_cast<double>(rec.iterations);
        }
        if (scores.empty())
            continue;
        std::sort(scores.begin(), scores.end());
        MethodSummary s;
        s.method = id;
        s.trials = static_cast<Index>(scores.size());
        s.median = detail::quantile(scores, 0.5);
        s.q1 = detail::quantile(scores, 0.25);
        s.q3 = detail::quantile(scores, 0.75);
        s.min = scores.front();
        s.max = scores.back();
        s.converged_rate = static_cast<double>(converged) / static_cast<double>(scores.size());
        s.iterations_mean = iteration_sum / static_cast<double>(scores.size());
        out.push_back(s);
    }
    return out;
}

inline std::string records_to_csv(const std::vector<TrialRecord>& records)
{
    std::string body = "trial,method,F,converged,iterations,wall_ms\n";
    for (const TrialRecord& rec : records)
    {
        body += std::to_string(rec.trial);
        body += ',';
        body += method_name(rec.method);
        body += ',';
        body += io::format_float(rec.score);
        body += ',';
        body += rec.converged ? '1' : '0';
        body += ',';
        body += std::to_string(rec.iterations);
        body += ',';
        body += io::format_float(rec.wall_ms);
        body += '\n';
    }
    return body;
}

inline std::string summary_to_csv(const std::vector<MethodSummary>& summaries)
{
    std::string body = "method,trials,median,q1,q3,min,max,converged_rate,iterations_mean\n";
    for (const MethodSummary& s : summaries)
    {
        body += method_name(s.method);
        body += ',';
        body += std::to_string(s.trials);
        for (double v : {s.median, s.q1, s.q3, s.min, s.max, s.converged_rate, s.iterations_mean})
        {
            body += ',';
            body += io::format_float(v);
        }
        body += '\n';
    }
    return body;
}

inline nlohmann::json config_to_json(const BenchmarkConfig& cfg)
{
    return {{"example", example_name(cfg.example)},
            {"order", cfg.order},
            {"rows", cfg.block_rows},
            {"length", cfg.length},
            {"sigma2", cfg.sigma2},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"eps", cfg.epsilon},
            {"max_iters", cfg.max_iters},
            {"fixed_system", cfg.fixed_system}};
}

inline nlohmann::json results_to_json(const BenchmarkConfig& cfg,
                                      const std::vector<TrialRecord>& records)
{
    nlohmann::json recs = nlohmann::json::array();
    for (const TrialRecord& rec : records)
        recs.push_back({{"trial", rec.trial},
                        {"method", method_name(rec.method)},
                        {"F", rec.score},
                        {"converged", rec.converged},
                        {"iterations", rec.iterations},
                        {"wall_ms", rec.wall_ms},
                        {"instance_hash", rec.instance_hash}});
    nlohmann::json summ = nlohmann::json::array();
    for (const MethodSummary& s : summarize(records))
        summ.push_back({{"method", method_name(s.method)},
                        {"trials", s.trials},
                        {"median", s.median},
                        {"q1", s.q1},
                        {"q3", s.q3},
                        {"min", s.min},
                        {"max", s.max},
                        {"converged_rate", s.converged_rate},
                        {"iterations_mean", s.iterations_mean}});
    return {{"config", config_to_json(cfg)},
            {"metadata", {{"not_implemented", nlohmann::json::array({"SLRA"})}}},
            {"records", std::move(recs)},
            {"summary", std::move(summ)}};
}

} // namespace lrh::bench

#endif // LRH_BENCH_HPP
