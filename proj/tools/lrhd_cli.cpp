// lrhd: benchmark and denoising CLI for low-rank Hankel matrix estimation.
//
// Subcommands:
//   bench         Monte Carlo comparison of all estimators on one configuration
//   paper-figures the four standard benchmark configurations in one run
//   denoise       denoise a signal from CSV with a chosen estimator
//   mp-median     median of the Marchenko-Pastur law for a given aspect ratio
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lrh/bench.hpp"
#include "lrh/instance_json.hpp"
#include "lrh/lrh.hpp"

namespace
{

using lrh::Index;

struct BenchFlags
{
    std::string example = "trajectory";
    Index order = 4;
    Index rows = 8;
    Index length = 0; // 0: default per example (96 trajectory, 40 impulse)
    double sigma2 = 0.1;
    Index trials = 100;
    std::uint64_t seed = 42;
    double eps = 1e-5;
    Index max_iters = 500;
    std::string out;
    std::string format = "csv";
    bool fixed_system = false;
    bool timing = false;
    std::string config_file;
};

lrh::bench::BenchmarkConfig to_config(const BenchFlags& flags)
{
    lrh::bench::BenchmarkConfig cfg;
    if (flags.example == "trajectory")
        cfg.example = lrh::bench::ExampleKind::trajectory;
    else if (flags.example == "impulse")
        cfg.example = lrh::bench::ExampleKind::impulse;
    else
        throw CLI::ValidationError("--example", "must be 'trajectory' or 'impulse'");
    cfg.order = flags.order;
    cfg.block_rows = flags.rows;
    cfg.length = flags.length > 0
                     ? flags.length
                     : (cfg.example == lrh::bench::ExampleKind::trajectory ? 96 : 40);
    cfg.sigma2 = flags.sigma2;
    cfg.trials = flags.trials;
    cfg.seed = flags.seed;
    cfg.epsilon = flags.eps;
    cfg.max_iters = flags.max_iters;
    cfg.fixed_system = flags.fixed_system;
    cfg.measure_time = flags.timing;
    return cfg;
}

// Bind the shared benchmark flags to a subcommand. Values read from a JSON
// config file act as defaults; explicitly passed flags win.
void add_bench_flags(CLI::App* app, BenchFlags& flags, bool with_example = true)
{
    if (with_example)
        app->add_option("--example", flags.example, "Case study: trajectory or impulse")
            ->check(CLI::IsMember({"trajectory", "impulse"}));
    app->add_option("--order", flags.order, "System order n_x");
    app->add_option("--rows", flags.rows, "Hankel block rows m");
    app->add_option("--length", flags.length, "Signal length N (0 = per-example default)");
    app->add_option("--sigma2", flags.sigma2, "Noise variance sigma_v^2");
    app->add_option("--trials", flags.trials, "Monte Carlo trials");
    app->add_option("--seed", flags.seed, "Root seed");
    app->add_option("--eps", flags.eps, "Relative convergence tolerance");
    app->add_option("--max-iters", flags.max_iters, "Iteration cap");
    app->add_flag("--fixed-system", flags.fixed_system, "Reuse one random system across trials");
    app->add_flag("--timing", flags.timing,
                  "Measure per-method wall time (off by default so outputs are reproducible)");
    app->add_option("--config", flags.config_file, "JSON config file mirroring these flags");
}

void apply_config_file(const CLI::App* app, BenchFlags& flags)
{
    if (flags.config_file.empty())
        return;
    std::ifstream in(flags.config_file);
    if (!in)
        throw CLI::ValidationError("--config", "cannot open '" + flags.config_file + "'");
    nlohmann::json doc;
    try
    {
        in >> doc;
    }
    catch (const std::exception& e)
    {
        throw CLI::ValidationError("--config", std::string("invalid JSON: ") + e.what());
    }
    auto unset = [&](const std::string& flag) {
        const CLI::Option* opt = app->get_option_no_throw(flag);
        return opt != nullptr && opt->count() == 0;
    };
    if (doc.contains("example") && unset("--example"))
        flags.example = doc["example"].get<std::string>();
    if (doc.contains("order") && unset("--order"))
        flags.order = doc["order"].get<Index>();
    if (doc.contains("rows") && unset("--rows"))
        flags.rows = doc["rows"].get<Index>();
    if (doc.contains("length") && unset("--length"))
        flags.length = doc["length"].get<Index>();
    if (doc.contains("sigma2") && unset("--sigma2"))
        flags.sigma2 = doc["sigma2"].get<double>();
    if (doc.contains("trials") && unset("--trials"))
        flags.trials = doc["trials"].get<Index>();
    if (doc.contains("seed") && unset("--seed"))
        flags.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("eps") && unset("--eps"))
        flags.eps = doc["eps"].get<double>();
    if (doc.contains("max_iters") && unset("--max-iters"))
        flags.max_iters = doc["max_iters"].get<Index>();
    if (doc.contains("out") && unset("--out") && flags.out.empty())
        flags.out = doc["out"].get<std::string>();
    if (doc.contains("format") && unset("--format"))
        flags.format = doc["format"].get<std::string>();
    if (doc.contains("fixed_system") && unset("--fixed-system"))
        flags.fixed_system = doc["fixed_system"].get<bool>();
    if (doc.contains("timing") && unset("--timing"))
        flags.timing = doc["timing"].get<bool>();
}

std::string sibling_path(const std::string& out, const std::string& suffix)
{
    std::filesystem::path p(out);
    std::filesystem::path stem = p;
    stem.replace_extension();
    return stem.string() + suffix;
}

nlohmann::json meta_json(const lrh::bench::BenchmarkConfig& cfg)
{
    nlohmann::json methods = nlohmann::json::array();
    for (lrh::bench::MethodId id : lrh::bench::all_methods)
        methods.push_back(lrh::bench::method_name(id));
    return {{"config", lrh::bench::config_to_json(cfg)},
            {"methods", methods},
            {"not_implemented", nlohmann::json::array({"SLRA"})}};
}

void write_bench_outputs(const lrh::bench::BenchmarkConfig& cfg,
                         const std::vector<lrh::bench::TrialRecord>& records,
                         const std::string& out, const std::string& format)
{
    if (format == "json")
    {
        lrh::io::write_file_atomic(out, lrh::bench::results_to_json(cfg, records).dump(2) + "\n");
        return;
    }
    lrh::io::write_file_atomic(out, lrh::bench::records_to_csv(records));
    lrh::io::write_file_atomic(sibling_path(out, "_summary.csv"),
                               lrh::bench::summary_to_csv(lrh::bench::summarize(records)));
    lrh::io::write_file_atomic(sibling_path(out, "_meta.json"), meta_json(cfg).dump(2) + "\n");
}

int run_bench(BenchFlags& flags)
{
    const lrh::bench::BenchmarkConfig cfg = to_config(flags);
    const auto records = lrh::bench::run_benchmark(cfg);
    write_bench_outputs(cfg, records, flags.out, flags.format);
    std::cout << "wrote " << records.size() << " records to " << flags.out << "\n";
    return 0;
}

int run_paper_figures(BenchFlags& flags, const std::string& out_dir)
{
    std::filesystem::create_directories(out_dir);
    struct Panel
    {
        const char* example;
        double sigma2;
        Index length;
        const char* name;
    };
    // 2x2 grid: trajectory at sigma2 in {0.1, 0.01} and impulse at {0.01, 0.001}.
    const Panel panels[] = {
        {"trajectory", 0.1, 96, "trajectory_sigma2_0.1"},
        {"trajectory", 0.01, 96, "trajectory_sigma2_0.01"},
        {"impulse", 0.01, 40, "impulse_sigma2_0.01"},
        {"impulse", 0.001, 40, "impulse_sigma2_0.001"},
    };
    for (const Panel& panel : panels)
    {
        BenchFlags panel_flags = flags;
        panel_flags.example = panel.example;
        panel_flags.sigma2 = panel.sigma2;
        panel_flags.length = panel.length;
        const lrh::bench::BenchmarkConfig cfg = to_config(panel_flags);
        const auto records = lrh::bench::run_benchmark(cfg);
        const std::string base = (std::filesystem::path(out_dir) / panel.name).string();
        lrh::io::write_file_atomic(base + ".csv", lrh::bench::records_to_csv(records));
        lrh::io::write_file_atomic(base + "_summary.csv",
                                   lrh::bench::summary_to_csv(lrh::bench::summarize(records)));
        lrh::io::write_file_atomic(base + "_meta.json", meta_json(cfg).dump(2) + "\n");
        std::cout << panel.name << ": " << records.size() << " records\n";
    }
    return 0;
}

struct DenoiseFlags
{
    std::string method = "lrhd";
    std::string input;
    Index rows = 0;
    Index rank = -1;
    double sigma2 = 0.0; // 0: estimate from the data
    double eps = 1e-5;
    Index max_iters = 500;
    std::string out;
    std::string spectrum_out;
};

int run_denoise(const DenoiseFlags& flags)
{
    const auto method = lrh::bench::method_from_name(flags.method);
    if (!method)
        throw CLI::ValidationError("--method", "unknown method '" + flags.method + "'");

    const lrh::VectorX<double> signal = lrh::io::read_signal_csv(flags.input);
    if (flags.rows < 1 || signal.size() < 2 * flags.rows - 1)
        throw CLI::ValidationError("--rows",
                                   "need 1 <= rows and a signal of length >= 2*rows-1");
    const lrh::MatrixX<double> w = lrh::build_hankel<double>(signal, flags.rows);
    const auto pi = lrh::build_transform<double>(lrh::TransformKind::identity, w.cols());

    const bool needs_rank = *method == lrh::bench::MethodId::tsvd ||
                            *method == lrh::bench::MethodId::iter ||
                            *method == lrh::bench::MethodId::dd ||
                            *method == lrh::bench::MethodId::lrhd;
    if (needs_rank && flags.rank < 0)
        throw CLI::ValidationError("--rank", "required for methods tsvd, iter, dd, lrhd");

    std::optional<double> sigma;
    if (flags.sigma2 > 0.0)
        sigma = std::sqrt(flags.sigma2);

    lrh::MatrixX<double> estimate;
    const lrh::IterationConfig icfg{flags.eps, flags.max_iters};
    switch (*method)
    {
    case lrh::bench::MethodId::tsvd:
        estimate = lrh::tsvd_estimate<double>(w, pi, flags.rank);
        break;
    case lrh::bench::MethodId::iter:
        estimate = lrh::slra_iterative<double>(w, pi, flags.rank, icfg).first;
        break;
    case lrh::bench::MethodId::nuc:
    {
        const double sig = sigma ? *sigma : lrh::estimate_noise_level<double>(w, pi);
        const auto a = lrh::detail::aspect_of(w.rows(), w.cols());
        const double tau = lrh::soft_threshold_value<double>(a.beta, sig, a.q);
        lrh::IterationConfig ncfg = lrh::nuclear_default_config();
        ncfg.max_iters = flags.max_iters;
        estimate = lrh::nuclear_norm_denoise<double>(w, pi, tau, ncfg).first;
        break;
    }
    case lrh::bench::MethodId::shrink:
        estimate = lrh::apply_shrinkage<double>(w, pi, lrh::ShrinkagePolicy<double>::optimal(sigma));
        break;
    case lrh::bench::MethodId::hard:
        estimate = lrh::apply_shrinkage<double>(w, pi, lrh::ShrinkagePolicy<double>::hard({}, sigma));
        break;
    case lrh::bench::MethodId::dd:
        estimate = lrh::data_driven_shrinker<double>(w, pi, flags.rank).estimate;
        break;
    case lrh::bench::MethodId::lrhd:
        estimate = lrh::lrhd<double>(w, pi, flags.rank, icfg).first;
        break;
    }

    // Signal read-out of the Hankel part of the estimate. Single-shot
    // estimators are not exactly Hankel, so project first; the iterative
    // solvers are fixed points of the projection and pass through unchanged.
    const lrh::VectorX<double> denoised =
        lrh::hankel_signal<double>(lrh::MatrixX<double>(lrh::hankel_project<double>(estimate)));
    lrh::io::write_signal_csv(flags.out, denoised);
    if (!flags.spectrum_out.empty())
        lrh::io::write_spectrum_csv(flags.spectrum_out, lrh::spectrum<double>(w, pi));
    std::cout << "wrote " << denoised.size() << " samples to " << flags.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Low-rank Hankel matrix denoising benchmark"};
    app.require_subcommand(1);

    BenchFlags bench_flags;
    CLI::App* bench = app.add_subcommand("bench", "Run the Monte Carlo benchmark");
    add_bench_flags(bench, bench_flags);
    bench->add_option("--out", bench_flags.out, "Output file")->required();
    bench->add_option("--format", bench_flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    BenchFlags figure_flags;
    std::string figures_dir;
    CLI::App* figures =
        app.add_subcommand("paper-figures", "Run the four standard benchmark configurations");
    add_bench_flags(figures, figure_flags, /*with_example=*/false);
    figures->add_option("--out", figures_dir, "Output directory")->required();

    DenoiseFlags denoise_flags;
    CLI::App* denoise = app.add_subcommand("denoise", "Denoise a signal from CSV");
    denoise->add_option("--method", denoise_flags.method,
                        "tsvd | iter | nuc | shrink | hard | dd | lrhd");
    denoise->add_option("--input", denoise_flags.input, "Input signal CSV (one value per line)")
        ->required();
    denoise->add_option("--rows", denoise_flags.rows, "Hankel rows m")->required();
    denoise->add_option("--rank", denoise_flags.rank, "Target rank r");
    denoise->add_option("--sigma2", denoise_flags.sigma2, "Known noise variance (default: estimate)");
    denoise->add_option("--eps", denoise_flags.eps, "Relative convergence tolerance");
    denoise->add_option("--max-iters", denoise_flags.max_iters, "Iteration cap");
    denoise->add_option("--out", denoise_flags.out, "Output signal CSV")->required();
    denoise->add_option("--spectrum-out", denoise_flags.spectrum_out,
                        "Optional CSV of the input's singular values (descending)");

    double mp_beta = 0.0;
    Index mp_rows = 0;
    Index mp_length = 0;
    std::string mp_out;
    CLI::App* mp = app.add_subcommand("mp-median", "Marchenko-Pastur median z_med(beta)");
    mp->add_option("--beta", mp_beta, "Aspect ratio in (0, 1]");
    mp->add_option("--rows", mp_rows, "Hankel rows m (alternative to --beta)");
    mp->add_option("--length", mp_length, "Signal length N (with --rows: beta = m/(N-m+1))");
    mp->add_option("--out", mp_out, "Optional output CSV");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (bench->parsed())
        {
            apply_config_file(bench, bench_flags);
            return run_bench(bench_flags);
        }
        if (figures->parsed())
        {
            apply_config_file(figures, figure_flags);
            return run_paper_figures(figure_flags, figures_dir);
        }
        if (denoise->parsed())
            return run_denoise(denoise_flags);
        if (mp->parsed())
        {
            double beta = mp_beta;
            if (beta == 0.0)
            {
                if (mp_rows < 1 || mp_length < mp_rows)
                    throw CLI::ValidationError("--beta",
                                               "give --beta, or --rows with --length");
                const double cols = static_cast<double>(mp_length - mp_rows + 1);
                beta = static_cast<double>(mp_rows) / cols;
                if (beta > 1.0)
                    beta = 1.0 / beta;
            }
            const double median = lrh::mp_median(beta);
            std::cout << lrh::io::format_float(beta, 15) << ","
                      << lrh::io::format_float(median, 15) << "\n";
            if (!mp_out.empty())
                lrh::io::write_file_atomic(mp_out, "beta,z_med\n" +
                                                       lrh::io::format_float(beta, 15) + "," +
                                                       lrh::io::format_float(median, 15) + "\n");
            return 0;
        }
    }
    catch (const CLI::Error& e)
    {
        return app.exit(e);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
