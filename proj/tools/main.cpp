// sumlab: run summability, operator-average, maximal-function, and metric
// experiments from JSON configs and emit deterministic reports.

#include <CLI11.hpp>

#include "sumlab/batteries.hpp"
#include "sumlab/jsonio.hpp"
#include "sumlab/rng.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

namespace {

using namespace sumlab;

struct OutputOptions {
    std::string out_dir = ".";
    bool csv = false;
    bool quiet = false;
};

json load_config(const std::string& config_path, const std::string& inline_json) {
    if (!config_path.empty()) return json::parse(read_text(config_path));
    if (!inline_json.empty()) return json::parse(inline_json);
    throw input_error("missing config: pass --config <path.json> or --json '<...>'");
}

// Reports are deterministic for a fixed seed; wall-clock goes to a side
// file so byte-identical runs stay byte-identical.
int emit(const Report& rep, const OutputOptions& opt, double wall_ms) {
    std::string base = opt.out_dir + "/" + rep.name;
    write_text_atomic(base + ".json", report_to_json(rep).dump(2) + "\n");
    if (opt.csv)
        for (const auto& t : rep.tables)
            write_text_atomic(base + "." + t.name + ".csv", table_to_csv(t));
    json meta = {{"wall_ms", wall_ms}};
    write_text_atomic(base + ".meta.json", meta.dump(2) + "\n");

    if (!opt.quiet) {
        for (const auto& c : rep.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << rep.name << ": " << c.name
                      << " (observed " << format_double(c.observed) << ", bound "
                      << format_double(c.bound) << ")\n";
        std::cout << (rep.pass() ? "PASS" : "FAIL") << " " << rep.name << "\n";
    }
    return rep.pass() ? 0 : 1;
}

Report run_sum(const json& cfg, std::uint64_t seed) {
    SeriesSpec s = series_from_json(cfg.at("series"));
    std::string method = cfg.value("method", "cesaro");
    Report rep;
    rep.name = "sum-" + method;
    rep.seed = seed;
    SummabilityReport sr;
    if (method == "cesaro") {
        sr = cesaro_sum(s, cfg.value("n", std::size_t(10000)), cfg.value("tol", 1e-6));
    } else if (method == "abel") {
        std::vector<double> grid =
            cfg.value("grid", std::vector<double>{0.9, 0.99, 0.999});
        sr = abel_sum(s, grid, cfg.value("n_terms", std::size_t(40000)),
                      cfg.value("tail_tol", 1e-12));
    } else if (method == "classical") {
        PartialSumTrace t = partial_sums(s, cfg.value("n", std::size_t(10000)));
        sr.method = SummabilityReport::Method::Classical;
        sr.trace = t;
        std::size_t n = t.values.size() - 1;
        std::size_t win = std::max<std::size_t>((n + 1) / 4,
                                                std::min<std::size_t>(16, n + 1));
        double spread = 0.0;
        for (std::size_t l = n + 1 - win; l <= n; ++l)
            spread = std::max(spread, std::abs(t.values[l] - t.values[n]));
        sr.stabilization_spread = spread;
        if (spread <= cfg.value("tol", 1e-6)) sr.estimate = t.values.back();
    } else {
        throw input_error("sum: unknown method '" + method + "'");
    }
    rep.check_true("estimate found", !sr.divergent());
    if (sr.estimate) {
        rep.value("estimate_re", sr.estimate->real());
        rep.value("estimate_im", sr.estimate->imag());
    }
    rep.value("stabilization_spread", sr.stabilization_spread);
    Table t;
    t.name = "trace";
    t.columns = {"index", "re", "im"};
    for (std::size_t i = 0; i < sr.trace.values.size(); ++i)
        t.rows.push_back(
            {double(i), sr.trace.values[i].real(), sr.trace.values[i].imag()});
    rep.tables.push_back(std::move(t));
    return rep;
}

Report run_spectral(const json& cfg, std::uint64_t seed) {
    Matrix x = matrix_from_json(cfg.at("matrix"));
    std::string op = cfg.value("op", "radius");
    Report rep;
    rep.name = "spectral-" + op;
    rep.seed = seed;
    if (op == "radius") {
        SpectralReport sr = spectral_radius(x, cfg.value("n_max", std::size_t(512)));
        rep.value("gelfand_estimate", sr.gelfand_estimate);
        rep.value("fekete_inf", sr.fekete_inf);
        if (sr.eigen_available) rep.value("eigen_radius", sr.eigen_radius);
        rep.check_true("growth estimate consistent with eigenvalues", sr.consistent);
        Table t;
        t.name = "gelfand_trace";
        t.columns = {"n", "norm_root"};
        for (std::size_t i = 0; i < sr.trace_indices.size(); ++i)
            t.rows.push_back({double(sr.trace_indices[i]), sr.gelfand_trace[i]});
        rep.tables.push_back(std::move(t));
    } else if (op == "eigenvalues") {
        cvector eig = spectrum_eigenvalues(x);
        Table t;
        t.name = "eigenvalues";
        t.columns = {"re", "im", "modulus"};
        for (const auto& ev : eig)
            t.rows.push_back({ev.real(), ev.imag(), std::abs(ev)});
        rep.tables.push_back(std::move(t));
        rep.value("radius", eig.empty() ? 0.0 : std::abs(eig.front()));
        rep.check_true("computed", true);
    } else if (op == "neumann") {
        NeumannResult nr =
            neumann_inverse(x, NormPairing::inf_inf(), cfg.value("tol", 1e-10));
        rep.value("terms_used", double(nr.terms_used));
        rep.value("residual", nr.residual);
        rep.value("tail_bound", nr.tail_bound);
        rep.check_le("residual within tolerance", nr.residual,
                     cfg.value("tol", 1e-10));
    } else {
        throw input_error("spectral: unknown op '" + op + "'");
    }
    return rep;
}

Report run_maximal(const json& cfg, std::uint64_t seed) {
    GridFunction f;
    const json& fn = cfg.at("function");
    if (fn.is_object() && fn.contains("csv"))
        f = grid_function_from_csv(read_text(fn.at("csv").get<std::string>()));
    else {
        f.lo = cfg.value("lo", 0L);
        f.values = vector_from_json(fn);
    }
    std::string op = cfg.value("op", "weak-type");
    if (op == "weak-type") {
        std::vector<double> lambdas =
            cfg.at("lambdas").get<std::vector<double>>();
        Report rep = weak_type_report(f, lambdas);
        rep.seed = seed;
        return rep;
    }
    if (op == "lp") {
        Report rep = lp_bound_report(f, cfg.value("p", 2.0));
        rep.seed = seed;
        return rep;
    }
    if (op == "profile") {
        MaximalProfile prof = discrete_maximal(f);
        Report rep;
        rep.name = "maximal-profile";
        rep.seed = seed;
        Table t;
        t.name = "profile";
        t.columns = {"j", "value", "witness_lo", "witness_hi"};
        for (std::size_t i = 0; i < prof.values.size(); ++i)
            t.rows.push_back({double(prof.lo + long(i)), prof.values[i],
                              double(prof.witness[i].first),
                              double(prof.witness[i].second)});
        rep.tables.push_back(std::move(t));
        rep.check_true("computed", true);
        return rep;
    }
    throw input_error("maximal: unknown op '" + op + "'");
}

Report run_fourier(const json& cfg, std::uint64_t seed) {
    std::size_t m = cfg.value("m", std::size_t(2048));
    SampledCircleFunction f;
    const json& fj = cfg.at("f");
    if (fj.is_string()) {
        std::string name = fj.get<std::string>();
        if (name == "abs-sin")
            f = sample_circle(m, [](double t) { return cplx(std::abs(std::sin(t)), 0.0); });
        else if (name == "z")
            f = sample_circle(m, [](double t) { return cplx(std::cos(t), std::sin(t)); });
        else
            throw input_error("fourier: unknown sample family '" + name + "'");
    } else {
        f.m = m;
        f.values = vector_from_json(fj);
        if (f.values.size() != m) throw input_error("fourier: sample count != m");
    }

    std::string op = cfg.value("op", "fejer");
    Report rep;
    rep.name = "fourier-" + op;
    rep.seed = seed;
    auto attach = [&](const SampledCircleFunction& g) {
        Table t;
        t.name = "samples";
        t.columns = {"theta", "re", "im"};
        for (std::size_t k = 0; k < g.m; ++k)
            t.rows.push_back({g.node(k), g.values[k].real(), g.values[k].imag()});
        rep.tables.push_back(std::move(t));
    };
    if (op == "coeffs") {
        FourierCoeffs c = fourier_coefficients(f, cfg.value("degree", 8));
        Table t;
        t.name = "coefficients";
        t.columns = {"j", "re", "im"};
        for (int j = -c.degree; j <= c.degree; ++j)
            t.rows.push_back({double(j), c.coeff(j).real(), c.coeff(j).imag()});
        rep.tables.push_back(std::move(t));
        rep.check_true("computed", true);
    } else if (op == "fejer") {
        CircleMeanResult r = fejer_mean(f, cfg.value("n", std::size_t(64)));
        rep.value("sup_error", r.sup_error);
        rep.check_true("computed", true);
        attach(r.mean);
    } else if (op == "abel") {
        CircleMeanResult r =
            abel_poisson_mean(f, cfg.value("r", 0.9), cfg.value("degree", 256),
                              cfg.value("tail_tol", 1e-12));
        rep.value("sup_error", r.sup_error);
        rep.value("truncation_bound", r.truncation_bound);
        rep.check_true("computed", true);
        attach(r.mean);
    } else if (op == "rotate") {
        long s = cfg.value("rotation_index", 1L);
        double ang = 2.0 * 3.141592653589793 * double(s) / double(m);
        SampledCircleFunction r =
            rotation_cesaro(f, cplx(std::cos(ang), std::sin(ang)),
                            cfg.value("n", std::size_t(64)));
        rep.check_true("computed", true);
        attach(r);
    } else {
        throw input_error("fourier: unknown op '" + op + "'");
    }
    return rep;
}

Report run_ergodic(const json& cfg, std::uint64_t seed) {
    std::string op = cfg.value("op", "birkhoff");
    const json& sysj = cfg.at("system");
    if (op == "birkhoff" && sysj.contains("alphabet")) {
        ShiftSystem sys = shift_system_from_json(sysj);
        CylinderFunction f = CylinderFunction::coordinate(
            cfg.value("coord", 0L), vector_from_json(cfg.at("symbol_values")));
        BirkhoffResult res =
            birkhoff_average(sys, f, cfg.value("n", std::size_t(1000)),
                             cfg.value("points", std::size_t(100)), seed);
        res.report.seed = seed;
        return res.report;
    }
    FiniteSystem sys = finite_system_from_json(sysj);
    if (op == "transference") {
        cvector f = vector_from_json(cfg.at("f"));
        TransferenceResult res = transference_maximal(
            sys, f, cfg.value("n", std::size_t(8)),
            cfg.value("lambdas", std::vector<double>{0.25, 0.5, 0.75}));
        res.report.seed = seed;
        return res.report;
    }
    if (op == "krylov") {
        std::vector<double> start = cfg.at("start").get<std::vector<double>>();
        InvariantMeasureResult res =
            krylov_bogolyubov(sys, start, cfg.value("n", std::size_t(999)));
        Report rep;
        rep.name = "ergodic-krylov";
        rep.seed = seed;
        rep.value("defect", res.defect);
        rep.value("mass", res.mass);
        double mass = 0.0;
        for (double w : start) mass += std::abs(w);
        rep.check_le("defect within 2 mass/(n+1)", res.defect,
                     2.0 * mass / double(cfg.value("n", std::size_t(999)) + 1));
        return rep;
    }
    if (op == "coboundary") {
        cvector f = vector_from_json(cfg.at("f"));
        CoboundaryDecomposition res = coboundary_decompose(sys, f);
        Report rep;
        rep.name = "ergodic-coboundary";
        rep.seed = seed;
        rep.value("residual", res.residual);
        rep.check_le("reassembly residual", res.residual, 1e-10);
        return rep;
    }
    if (op == "power-tail") {
        cvector f = vector_from_json(cfg.at("f"));
        Report rep = power_tail_check(sys, f, cfg.value("p", 2.0),
                                      cfg.value("n_max", std::size_t(1000)));
        rep.seed = seed;
        return rep;
    }
    throw input_error("ergodic: unknown op '" + op + "'");
}

Report run_metric(const json& cfg, std::uint64_t seed) {
    UltrametricSpace space = ultrametric_space_from_json(cfg.at("space"));
    std::string op = cfg.value("op", "dimension");
    if (op == "dimension") {
        DimensionEstimate est =
            box_dimension(space, cfg.value("a", 1.0), cfg.value("k_lo", std::size_t(4)),
                          cfg.value("k_hi", std::size_t(10)));
        Report rep;
        rep.name = "metric-dimension";
        rep.seed = seed;
        rep.value("slope", est.slope);
        rep.value("max_fit_residual", est.max_fit_residual);
        Table t;
        t.name = "counts";
        t.columns = {"log_inv_r", "log_count"};
        for (std::size_t i = 0; i < est.log_inv_r.size(); ++i)
            t.rows.push_back({est.log_inv_r[i], est.log_count[i]});
        rep.tables.push_back(std::move(t));
        rep.check_true("computed", true);
        return rep;
    }
    if (op == "trichotomy") {
        Report rep =
            ball_trichotomy_check(space, cfg.value("trials", std::size_t(10000)), seed);
        return rep;
    }
    if (op == "doubling") {
        return doubling_constant(space, cfg.value("samples", std::size_t(2000)), seed);
    }
    if (op == "snowflake") {
        return snowflake_check(space, cfg.value("a", 0.5),
                               cfg.value("trials", std::size_t(10000)), seed);
    }
    throw input_error("metric: unknown op '" + op + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"summability, operator-average, and maximal-inequality lab"};
    app.require_subcommand(1);

    std::string config_path, inline_json, battery_name, filter;
    std::uint64_t seed = 0;
    OutputOptions opt;
    bool list = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config path");
        sub->add_option("--json", inline_json, "inline JSON config");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_flag("--csv", opt.csv, "also write CSV traces");
        sub->add_flag("--quiet", opt.quiet, "suppress per-check lines");
    };

    CLI::App* sum = app.add_subcommand("sum", "series summation experiments");
    CLI::App* spectral = app.add_subcommand("spectral", "operator experiments");
    CLI::App* maximal = app.add_subcommand("maximal", "maximal-function experiments");
    CLI::App* fourier = app.add_subcommand("fourier", "circle summation experiments");
    CLI::App* ergodic = app.add_subcommand("ergodic", "shift and permutation systems");
    CLI::App* metric = app.add_subcommand("metric", "ultrametric geometry experiments");
    for (CLI::App* sub : {sum, spectral, maximal, fourier, ergodic, metric})
        add_common(sub);

    CLI::App* battery = app.add_subcommand("battery", "named experiment batteries");
    battery->add_option("name", battery_name, "battery to run");
    battery->add_flag("--list", list, "list batteries");
    battery->add_option("--filter", filter, "prefix filter for --list");
    add_common(battery);

    app.footer(
        "CSV trace columns (written with --csv, 17 significant digits):\n"
        "  sum:               trace.csv             index,re,im\n"
        "  spectral radius:   gelfand_trace.csv     n,norm_root\n"
        "  spectral eigen:    eigenvalues.csv       re,im,modulus\n"
        "  maximal weak-type: level_sets.csv        lambda,count,bound\n"
        "  maximal lp:        truncation_chain.csv  lambda,level_count,"
        "split_level_count,split_bound\n"
        "  maximal profile:   profile.csv           j,value,witness_lo,witness_hi\n"
        "  fourier:           samples.csv           theta,re,im\n"
        "  fourier coeffs:    coefficients.csv      j,re,im\n"
        "  metric dimension:  counts.csv            log_inv_r,log_count\n"
        "  battery cesaro-geometric: cesaro_tail.csv case,n,deviation,bound\n"
        "Reports are deterministic per seed; wall-clock lives in *.meta.json.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto wall = [&] {
            return std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                .count();
        };
        if (battery->parsed()) {
            if (list) {
                for (const auto& b : sumlab::list_batteries())
                    if (filter.empty() || b.name.rfind(filter, 0) == 0)
                        std::cout << b.name << "  " << b.description << "\n";
                return 0;
            }
            if (battery_name.empty())
                throw sumlab::input_error("battery: name required (or --list)");
            sumlab::Report rep = sumlab::run_battery(battery_name, seed);
            return emit(rep, opt, wall());
        }
        sumlab::json cfg = load_config(config_path, inline_json);
        sumlab::Report rep;
        if (sum->parsed()) rep = run_sum(cfg, seed);
        else if (spectral->parsed()) rep = run_spectral(cfg, seed);
        else if (maximal->parsed()) rep = run_maximal(cfg, seed);
        else if (fourier->parsed()) rep = run_fourier(cfg, seed);
        else if (ergodic->parsed()) rep = run_ergodic(cfg, seed);
        else if (metric->parsed()) rep = run_metric(cfg, seed);
        return emit(rep, opt, wall());
    } catch (const sumlab::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const sumlab::input_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const sumlab::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
