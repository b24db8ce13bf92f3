#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "helpers.hpp"
#include "lrh/bench.hpp"

using namespace lrh;
using namespace lrh::bench;

namespace
{

BenchmarkConfig small_config()
{
    BenchmarkConfig cfg;
    cfg.example = ExampleKind::impulse;
    cfg.length = 40;
    cfg.sigma2 = 0.01;
    cfg.trials = 4;
    cfg.seed = 42;
    return cfg;
}

} // namespace

TEST_CASE("noise_reduction endpoints")
{
    Rng rng(101);
    const Matrix x = test::random_matrix(rng, 3, 4);
    const Matrix w = x + 0.5 * test::random_matrix(rng, 3, 4);
    CHECK(noise_reduction(x, w, w) == 0.0);
    CHECK(noise_reduction(x, x, w) == 100.0);
    // estimate halfway between: F = 50
    const Matrix halfway = 0.5 * (x + w);
    CHECK(noise_reduction(x, halfway, w) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK_THROWS_AS(noise_reduction(x, x, x), std::invalid_argument);
}

TEST_CASE("identity passthrough scores zero on real instances")
{
    const auto inst = make_instance(small_config(), 0);
    CHECK(noise_reduction(inst.noise_free, inst.measurement, inst.measurement) == 0.0);
}

TEST_CASE("one trial produces one record per method")
{
    BenchmarkConfig cfg = small_config();
    cfg.trials = 1;
    const auto records = run_benchmark(cfg);
    REQUIRE(records.size() == 7);
    for (std::size_t k = 0; k < records.size(); ++k)
    {
        CHECK(records[k].method == all_methods[k]);
        CHECK(records[k].trial == 0);
        CHECK(records[k].score <= 100.0);
        CHECK(records[k].wall_ms == 0.0);
    }
}

TEST_CASE("records are deterministic and share the instance within a trial")
{
    const auto a = run_benchmark(small_config());
    const auto b = run_benchmark(small_config());
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        CHECK(a[k].score == b[k].score);
        CHECK(a[k].iterations == b[k].iterations);
        CHECK(a[k].converged == b[k].converged);
        CHECK(a[k].instance_hash == b[k].instance_hash);
    }
    // shared-instance fairness: all methods in a trial see the same hash
    for (std::size_t k = 0; k < a.size(); k += 7)
        for (std::size_t j = 1; j < 7; ++j)
            CHECK(a[k + j].instance_hash == a[k].instance_hash);
    // different trials get different instances
    CHECK(a[0].instance_hash != a[7].instance_hash);
}

TEST_CASE("worker count does not change the records")
{
    setenv("LRHD_WORKERS", "3", 1);
    const auto parallel = run_benchmark(small_config());
    setenv("LRHD_WORKERS", "1", 1);
    const auto serial = run_benchmark(small_config());
    unsetenv("LRHD_WORKERS");
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t k = 0; k < parallel.size(); ++k)
    {
        CHECK(parallel[k].score == serial[k].score);
        CHECK(parallel[k].instance_hash == serial[k].instance_hash);
    }
}

TEST_CASE("summary statistics are recomputable from the emitted CSV")
{
    const auto records = run_benchmark(small_config());
    const std::string csv = records_to_csv(records);
    const std::string summary_csv = summary_to_csv(summarize(records));

    // parse the raw CSV back and recompute
    std::vector<TrialRecord> parsed;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "trial,method,F,converged,iterations,wall_ms");
    while (std::getline(in, line))
    {
        std::istringstream cells(line);
        std::string cell;
        TrialRecord rec;
        std::getline(cells, cell, ',');
        rec.trial = std::stol(cell);
        std::getline(cells, cell, ',');
        rec.method = *method_from_name(cell);
        std::getline(cells, cell, ',');
        rec.score = std::strtod(cell.c_str(), nullptr);
        std::getline(cells, cell, ',');
        rec.converged = cell == "1";
        std::getline(cells, cell, ',');
        rec.iterations = std::stol(cell);
        std::getline(cells, cell, ',');
        rec.wall_ms = std::strtod(cell.c_str(), nullptr);
        parsed.push_back(rec);
    }
    REQUIRE(parsed.size() == records.size());
    CHECK(summary_to_csv(summarize(parsed)) == summary_csv);
}

TEST_CASE("fixed-system mode reuses the trial-zero system")
{
    BenchmarkConfig cfg = small_config();
    cfg.fixed_system = true;
    const auto records = run_benchmark(cfg);
    CHECK(records.size() == 7 * 4);
    // noise still varies: per-trial instances differ
    CHECK(records[0].instance_hash != records[7].instance_hash);
}

TEST_CASE("config validation")
{
    BenchmarkConfig cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.sigma2 = 0.0;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.block_rows = 4;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
}

TEST_CASE("method names round-trip")
{
    for (MethodId id : all_methods)
        CHECK(method_from_name(method_name(id)) == id);
    CHECK(method_from_name("lrhd") == MethodId::lrhd);
    CHECK_FALSE(method_from_name("slra").has_value());
}

TEST_CASE("json results document carries config, metadata, and summary")
{
    const BenchmarkConfig cfg = small_config();
    const auto records = run_benchmark(cfg);
    const nlohmann::json doc = results_to_json(cfg, records);
    CHECK(doc.at("config").at("example") == "impulse");
    CHECK(doc.at("metadata").at("not_implemented") == nlohmann::json::array({"SLRA"}));
    CHECK(doc.at("records").size() == records.size());
    CHECK(doc.at("summary").size() == 7);
}

TEST_CASE("timing mode fills wall_ms without touching scores")
{
    BenchmarkConfig timed = small_config();
    timed.trials = 1;
    timed.measure_time = true;
    const auto with_time = run_benchmark(timed);
    BenchmarkConfig untimed = timed;
    untimed.measure_time = false;
    const auto without_time = run_benchmark(untimed);
    for (std::size_t k = 0; k < with_time.size(); ++k)
    {
        CHECK(with_time[k].score == without_time[k].score);
        CHECK(with_time[k].wall_ms >= 0.0);
        CHECK(without_time[k].wall_ms == 0.0);
    }
}
