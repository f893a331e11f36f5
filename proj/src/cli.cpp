#include "plsstop/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "plsstop/criteria.hpp"
#include "plsstop/errors.hpp"
#include "plsstop/evaluation.hpp"
#include "plsstop/io.hpp"
#include "plsstop/simulation.hpp"

namespace plsstop {

namespace {

namespace fs = std::filesystem;

using KV = std::vector<std::pair<std::string, std::string>>;

// "lo:hi:step", "a,b,c" or a single value.
std::vector<double> parse_axis(const std::string& text) {
    std::vector<double> out;
    auto to_double = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InvalidArgs("cannot parse '" + s + "' as a number");
        }
    };
    if (text.find(':') != std::string::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw InvalidArgs("range must be lo:hi:step");
        const double lo = to_double(text.substr(0, c1));
        const double hi = to_double(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = to_double(text.substr(c2 + 1));
        if (!(step > 0.0) || hi < lo)
            throw InvalidArgs("range must satisfy lo <= hi, step > 0");
        const auto count =
            static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i)
            out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(to_double(cur));
    if (out.empty()) throw InvalidArgs("empty value list");
    return out;
}

std::vector<Criterion> parse_criteria(const std::string& text) {
    std::vector<Criterion> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(criterion_from_name(cur));
    if (out.empty()) throw InvalidArgs("no criteria given");
    return out;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory '" + dir + "'");
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    std::string family = "gaussian";
    int n = 200;
    int p = 0;  // 0: draw from [p_min, p_max]
    int p_min = 7, p_max = 50;
    double sigma1 = 10.0, sigma2 = 8.0, sigma3 = 6.0;
    double sigma4 = 0.01, sigma5 = 0.01;
    int test_rows = 0;
    int reps = 1;
    std::uint64_t seed = 0;
    std::string out_dir;
};

int cmd_simulate(const SimulateOpts& o) {
    SimConfig cfg;
    cfg.family = family_from_name(o.family);
    cfg.n = o.n;
    if (o.p > 0) {
        cfg.p_min = cfg.p_max = o.p;
    } else {
        cfg.p_min = o.p_min;
        cfg.p_max = o.p_max;
    }
    cfg.sigma = {o.sigma1, o.sigma2, o.sigma3, o.sigma4, o.sigma5};
    cfg.test_rows = o.test_rows;
    cfg.seed = o.seed;
    cfg.validate();
    if (o.reps < 1) throw InvalidArgs("--reps must be >= 1");

    ensure_dir(o.out_dir);
    for (int r = 0; r < o.reps; ++r) {
        const SimulatedDataset sim = simulate_univ_yx(cfg, r);
        std::string stem = "dataset";
        if (o.reps > 1) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "_%03d", r + 1);
            stem += buf;
        }
        write_dataset_csv(join(o.out_dir, stem + ".csv"), sim.train);
        write_matrix_csv(join(o.out_dir, stem + "_latent.csv"), sim.latent,
                         {"l1", "l2", "l3", "l4"});
        if (sim.test)
            write_dataset_csv(join(o.out_dir, stem + "_test.csv"), *sim.test);
    }

    KV kv{{"command", "simulate"},
          {"family", o.family},
          {"n", std::to_string(cfg.n)},
          {"p_min", std::to_string(cfg.p_min)},
          {"p_max", std::to_string(cfg.p_max)},
          {"sigma1", format_double(cfg.sigma[0])},
          {"sigma2", format_double(cfg.sigma[1])},
          {"sigma3", format_double(cfg.sigma[2])},
          {"sigma4", format_double(cfg.sigma[3])},
          {"sigma5", format_double(cfg.sigma[4])},
          {"test_rows", std::to_string(cfg.test_rows)},
          {"reps", std::to_string(o.reps)},
          {"seed", std::to_string(o.seed)}};
    write_kv_file(join(o.out_dir, "run_config.txt"), kv);
    return 0;
}

// ------------------------------------------------------------------ select

struct SelectOpts {
    std::string data_path;
    std::string response = "y";
    std::string family = "gaussian";
    std::string criterion;
    int kmax = 0;
    double alpha = 0.05;
    int R = 500;
    int q = 5;
    bool loo = false;
    std::uint64_t seed = 0;
    std::string out_dir;
};

CriterionSpec spec_of(const std::string& criterion, int kmax, double alpha,
                      int R, int q, bool loo, std::uint64_t seed) {
    CriterionSpec spec;
    spec.criterion = criterion_from_name(criterion);
    spec.kmax = kmax;
    spec.alpha = alpha;
    spec.R = R;
    spec.folds.q = q;
    spec.folds.loo = loo;
    spec.seed = seed;
    return spec;
}

KV criterion_kv(const SelectOpts& o) {
    return {{"data", o.data_path},
            {"response", o.response},
            {"family", o.family},
            {"criterion", o.criterion},
            {"kmax", std::to_string(o.kmax)},
            {"alpha", format_double(o.alpha)},
            {"R", std::to_string(o.R)},
            {"q", std::to_string(o.q)},
            {"loo", o.loo ? "1" : "0"},
            {"seed", std::to_string(o.seed)}};
}

int cmd_select(const SelectOpts& o) {
    const Dataset data =
        read_dataset_csv(o.data_path, o.response, family_from_name(o.family));
    const CriterionSpec spec =
        spec_of(o.criterion, o.kmax, o.alpha, o.R, o.q, o.loo, o.seed);
    const CriterionResult res = run_criterion(data, spec);
    std::cout << "K=" << res.K << "\n";
    if (!o.out_dir.empty()) {
        ensure_dir(o.out_dir);
        write_trace_csv(join(o.out_dir, "trace.csv"), res);
        KV kv = criterion_kv(o);
        kv.insert(kv.begin(), {"command", "select"});
        kv.push_back({"selected_K", std::to_string(res.K)});
        if (res.k_max)
            kv.push_back({"k_max", std::to_string(*res.k_max)});
        write_kv_file(join(o.out_dir, "run_config.txt"), kv);
    }
    return 0;
}

// ----------------------------------------------------------------- compare

struct CompareOpts {
    std::string family = "gaussian";
    std::string criteria;
    std::string sigma4 = "0.01";
    std::string sigma5 = "0.01";
    int n = 200;
    int p_min = -1, p_max = -1;  // -1: regime default
    int datasets_per_cell = 20;
    int R = 250;
    double alpha = 0.05;
    int kmax = 0;
    int q = 5;
    bool loo = false;
    int test_rows = -1;          // -1: regime default
    std::uint64_t seed = 0;
    int jobs = 1;
    bool timings = false;
    bool full_scale = false;
    std::string out_dir;
};

int cmd_compare(CompareOpts o, bool dpc_given, bool r_given) {
    if (o.full_scale) {
        if (!dpc_given) o.datasets_per_cell = 100;
        if (!r_given) o.R = 500;
    }
    const auto s4 = parse_axis(o.sigma4);
    const auto s5 = parse_axis(o.sigma5);
    std::vector<std::pair<double, double>> couples;
    for (double a : s4)
        for (double b : s5) couples.emplace_back(a, b);

    SimConfig base;
    base.family = family_from_name(o.family);
    base.n = o.n;
    base.p_min = o.p_min >= 0 ? o.p_min : (o.n >= 100 ? 7 : 25);
    base.p_max = o.p_max >= 0 ? o.p_max : 50;
    base.test_rows = o.test_rows >= 0 ? o.test_rows : (o.n >= 100 ? 100 : 80);

    GridOptions opt;
    opt.datasets_per_cell = o.datasets_per_cell;
    opt.jobs = o.jobs;
    opt.timings = o.timings;
    opt.kmax = o.kmax;
    opt.alpha = o.alpha;
    opt.R = o.R;
    opt.folds.q = o.q;
    opt.folds.loo = o.loo;
    opt.seed = o.seed;

    const auto criteria = parse_criteria(o.criteria);
    const auto rows = grid_run(couples, base, criteria, opt);
    const GridSummary summary = summarize_grid(rows, o.alpha);

    ensure_dir(o.out_dir);
    write_grid_csv(join(o.out_dir, "grid.csv"), rows);
    write_summary_csv(join(o.out_dir, "summary.csv"), summary);

    KV kv{{"command", "compare"},
          {"family", o.family},
          {"criteria", o.criteria},
          {"sigma4", o.sigma4},
          {"sigma5", o.sigma5},
          {"n", std::to_string(o.n)},
          {"p_min", std::to_string(base.p_min)},
          {"p_max", std::to_string(base.p_max)},
          {"datasets_per_cell", std::to_string(o.datasets_per_cell)},
          {"R", std::to_string(o.R)},
          {"alpha", format_double(o.alpha)},
          {"kmax", std::to_string(o.kmax)},
          {"q", std::to_string(o.q)},
          {"loo", o.loo ? "1" : "0"},
          {"test_rows", std::to_string(base.test_rows)},
          {"seed", std::to_string(o.seed)},
          {"jobs", std::to_string(o.jobs)},
          {"timings", o.timings ? "1" : "0"},
          {"full_scale", o.full_scale ? "1" : "0"}};
    write_kv_file(join(o.out_dir, "run_config.txt"), kv);

    for (const auto& row : rows)
        if (!row.error.empty()) {
            std::cerr << "warning: " << std::count_if(rows.begin(), rows.end(),
                                                      [](const GridRow& r) {
                                                          return !r.error.empty();
                                                      })
                      << " grid cells failed (see grid.csv error column)\n";
            return 3;
        }
    return 0;
}

// -------------------------------------------------------------- robustness

struct RobustnessOpts {
    SelectOpts select;  // data/criterion parameters are shared
    std::string mode = "bootstrap";
    int B = 100;
};

int cmd_robustness(const RobustnessOpts& o) {
    const Dataset data = read_dataset_csv(
        o.select.data_path, o.select.response,
        family_from_name(o.select.family));
    const CriterionSpec spec =
        spec_of(o.select.criterion, o.select.kmax, o.select.alpha, o.select.R,
                o.select.q, o.select.loo, o.select.seed);
    ResampleMode mode;
    if (o.mode == "bootstrap") mode = ResampleMode::Bootstrap;
    else if (o.mode == "jackknife") mode = ResampleMode::Jackknife;
    else throw InvalidArgs("--mode must be bootstrap or jackknife");

    const KHistogram hist =
        robustness_distribution(data, spec, mode, o.B, o.select.seed);

    int mode_count = 0;
    if (hist.mode_k >= 0) mode_count = hist.counts.at(hist.mode_k);
    std::cout << "modal K=" << hist.mode_k << " (" << mode_count << "/"
              << hist.total << "), mean K=" << format_double(hist.mean_k)
              << ", errors=" << hist.errors << "\n";

    if (!o.select.out_dir.empty()) {
        ensure_dir(o.select.out_dir);
        write_histogram_csv(join(o.select.out_dir, "histogram.csv"), hist);
        KV kv = criterion_kv(o.select);
        kv.insert(kv.begin(), {"command", "robustness"});
        kv.push_back({"mode", o.mode});
        kv.push_back({"B", std::to_string(o.B)});
        write_kv_file(join(o.select.out_dir, "run_config.txt"), kv);
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Latent-component selection for partial least squares"};
    app.set_config("--config", "",
                   "key=value file with defaults; command-line flags win");
    app.require_subcommand(1);

    // simulate ------------------------------------------------------------
    auto sim_opts = std::make_shared<SimulateOpts>();
    CLI::App* sim = app.add_subcommand("simulate",
                                       "Generate a synthetic dataset");
    sim->add_option("--family", sim_opts->family,
                    "gaussian | binomial | poisson");
    sim->add_option("--n", sim_opts->n, "training rows");
    sim->add_option("--p", sim_opts->p, "fixed predictor count");
    sim->add_option("--p-min", sim_opts->p_min, "predictor range low");
    sim->add_option("--p-max", sim_opts->p_max, "predictor range high");
    sim->add_option("--sigma1", sim_opts->sigma1, "latent sd 1");
    sim->add_option("--sigma2", sim_opts->sigma2, "latent sd 2");
    sim->add_option("--sigma3", sim_opts->sigma3, "latent sd 3");
    sim->add_option("--sigma4", sim_opts->sigma4, "X-noise latent sd");
    sim->add_option("--sigma5", sim_opts->sigma5, "response noise sd");
    sim->add_option("--test-rows", sim_opts->test_rows,
                    "extra held-out rows");
    sim->add_option("--reps", sim_opts->reps, "datasets to generate");
    sim->add_option("--seed", sim_opts->seed, "master seed")
        ->envname("PLSSTOP_SEED");
    sim->add_option("--out-dir", sim_opts->out_dir, "output directory")
        ->required();

    // select ---------------------------------------------------------------
    auto sel_opts = std::make_shared<SelectOpts>();
    CLI::App* sel = app.add_subcommand(
        "select", "Choose the component count for one dataset");
    sel->add_option("--data", sel_opts->data_path, "input CSV")->required();
    sel->add_option("--response", sel_opts->response, "response column name");
    sel->add_option("--family", sel_opts->family,
                    "gaussian | binomial | poisson");
    sel->add_option("--criterion", sel_opts->criterion,
                    "q2|bicdof|bicglob|aic|bic|cvmc|pval|bootyt")
        ->required();
    sel->add_option("--kmax", sel_opts->kmax, "search bound (0 = auto)");
    sel->add_option("--alpha", sel_opts->alpha, "risk level");
    sel->add_option("--R", sel_opts->R, "bootstrap replicates");
    sel->add_option("--q", sel_opts->q, "cross-validation folds");
    sel->add_flag("--loo", sel_opts->loo, "leave-one-out folds");
    sel->add_option("--seed", sel_opts->seed, "master seed")
        ->envname("PLSSTOP_SEED");
    sel->add_option("--out-dir", sel_opts->out_dir,
                    "where to write trace.csv (optional)");

    // compare ---------------------------------------------------------------
    auto cmp_opts = std::make_shared<CompareOpts>();
    CLI::App* cmp = app.add_subcommand(
        "compare", "Run criteria over a simulated (sigma4, sigma5) grid");
    cmp->add_option("--family", cmp_opts->family,
                    "gaussian | binomial | poisson");
    cmp->add_option("--criteria", cmp_opts->criteria,
                    "comma list, e.g. q2,bicdof,bootyt")
        ->required();
    cmp->add_option("--sigma4", cmp_opts->sigma4,
                    "grid axis: lo:hi:step, comma list, or one value");
    cmp->add_option("--sigma5", cmp_opts->sigma5, "grid axis");
    cmp->add_option("--n", cmp_opts->n, "training rows");
    cmp->add_option("--p-min", cmp_opts->p_min, "predictor range low");
    cmp->add_option("--p-max", cmp_opts->p_max, "predictor range high");
    auto* dpc_opt = cmp->add_option("--datasets-per-cell",
                                    cmp_opts->datasets_per_cell,
                                    "replicates per grid couple");
    auto* r_opt = cmp->add_option("--R", cmp_opts->R, "bootstrap replicates");
    cmp->add_option("--alpha", cmp_opts->alpha, "risk level");
    cmp->add_option("--kmax", cmp_opts->kmax, "search bound (0 = auto)");
    cmp->add_option("--q", cmp_opts->q, "cross-validation folds");
    cmp->add_flag("--loo", cmp_opts->loo, "leave-one-out folds");
    cmp->add_option("--test-rows", cmp_opts->test_rows,
                    "held-out rows per dataset (-1 = regime default)");
    cmp->add_option("--seed", cmp_opts->seed, "master seed")
        ->envname("PLSSTOP_SEED");
    cmp->add_option("--jobs", cmp_opts->jobs, "worker threads");
    cmp->add_flag("--timings", cmp_opts->timings,
                  "record wall-clock runtime_ms (breaks byte-identity)");
    cmp->add_flag("--full-scale", cmp_opts->full_scale,
                  "100 datasets per cell, R=500");
    cmp->add_option("--out-dir", cmp_opts->out_dir, "output directory")
        ->required();

    // robustness -------------------------------------------------------------
    auto rob_opts = std::make_shared<RobustnessOpts>();
    CLI::App* rob = app.add_subcommand(
        "robustness", "Distribution of K under resampling of one dataset");
    rob->add_option("--data", rob_opts->select.data_path, "input CSV")
        ->required();
    rob->add_option("--response", rob_opts->select.response,
                    "response column name");
    rob->add_option("--family", rob_opts->select.family,
                    "gaussian | binomial | poisson");
    rob->add_option("--criterion", rob_opts->select.criterion,
                    "criterion to rerun")
        ->required();
    rob->add_option("--kmax", rob_opts->select.kmax, "search bound");
    rob->add_option("--alpha", rob_opts->select.alpha, "risk level");
    rob->add_option("--R", rob_opts->select.R, "bootstrap replicates (CI)");
    rob->add_option("--q", rob_opts->select.q, "cross-validation folds");
    rob->add_flag("--loo", rob_opts->select.loo, "leave-one-out folds");
    rob->add_option("--mode", rob_opts->mode, "bootstrap | jackknife");
    rob->add_option("--B", rob_opts->B, "bootstrap resamples of the data");
    rob->add_option("--seed", rob_opts->select.seed, "master seed")
        ->envname("PLSSTOP_SEED");
    rob->add_option("--out-dir", rob_opts->select.out_dir,
                    "where to write histogram.csv (optional)");

    // partition-count ---------------------------------------------------------
    auto pc_n = std::make_shared<long>(0);
    auto pc_q = std::make_shared<long>(0);
    CLI::App* pc = app.add_subcommand(
        "partition-count",
        "Count the balanced partitions of n items into q groups");
    pc->add_option("--n", *pc_n, "item count")->required();
    pc->add_option("--q", *pc_q, "group count")->required();

    int rc = 0;
    sim->callback([&] { rc = cmd_simulate(*sim_opts); });
    sel->callback([&] { rc = cmd_select(*sel_opts); });
    cmp->callback([&] {
        rc = cmd_compare(*cmp_opts, dpc_opt->count() > 0, r_opt->count() > 0);
    });
    rob->callback([&] { rc = cmd_robustness(*rob_opts); });
    pc->callback([&] { std::cout << partition_count(*pc_n, *pc_q) << "\n"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    } catch (const InvalidArgs& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("plsstop");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace plsstop
