// Command line front end: jump tests on datasets, kernel constants,
// bandwidth selection, and the Monte Carlo simulation harness.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 estimation error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "dataset_io.hpp"
#include "fjump/bandwidth.hpp"
#include "fjump/errors.hpp"
#include "fjump/jump_test.hpp"
#include "fjump/kernels.hpp"
#include "fjump/simulation.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

bool verbose_logging() {
    const char* v = std::getenv("FRECHET_JUMP_LOG");
    return v != nullptr && *v != '\0';
}

void log_note(const std::string& msg) {
    if (verbose_logging()) std::cerr << "[fjump] " << msg << "\n";
}

std::string fnv1a_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fjump::throw_error(fjump::errc::invalid_input, "cannot open " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= (unsigned char)buf[i];
            h *= 1099511628211ULL;
        }
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", (unsigned long long)h);
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        fjump::throw_error(fjump::errc::invalid_input, "cannot write " + out_path);
    out << text;
}

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

nlohmann::json config_to_json(const fjump::TestConfig& cfg) {
    return nlohmann::json{
        {"kernel", fjump::kernel_name(cfg.kernel)},
        {"cv_folds", cfg.cv_folds},
        {"n_bandwidth_candidates", cfg.n_bandwidth_candidates},
        {"undersmooth_exponent", cfg.undersmooth_exponent},
        {"alpha", cfg.alpha},
        {"min_side_points", cfg.min_side_points},
        {"seed", cfg.seed},
    };
}

struct CommonOpts {
    std::string input, format, out;
    std::string space = "density";
    std::string kernel = "epanechnikov";
    double cutoff = 0.0;
    int folds = 5;
    int grid_size = 10;
    double alpha = 0.05;
    double undersmooth = 1.0 / 20.0;
    std::uint64_t seed = 0;
    int jobs = 0;
};

void add_config_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--kernel", o.kernel, "Kernel: epanechnikov, triangular, uniform")
        ->check(CLI::IsMember({"epanechnikov", "triangular", "uniform"}));
    cmd->add_option("--folds", o.folds, "Cross-validation folds (>= 2)")
        ->check(CLI::Range(2, 1000));
    cmd->add_option("--grid-size", o.grid_size, "Number of candidate bandwidths")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", o.alpha, "Nominal test level");
    cmd->add_option("--undersmooth", o.undersmooth,
                    "Variance-bandwidth undersmoothing exponent");
    cmd->add_option("--seed", o.seed, "RNG seed");
}

fjump::TestConfig make_config(const CommonOpts& o) {
    fjump::TestConfig cfg;
    cfg.kernel = fjump::kernel_from_name(o.kernel);
    cfg.cv_folds = o.folds;
    cfg.n_bandwidth_candidates = o.grid_size;
    cfg.undersmooth_exponent = o.undersmooth;
    cfg.alpha = o.alpha;
    cfg.seed = o.seed;
    return cfg;
}

int cmd_test(const CommonOpts& o) {
    fjump::Space space = fjump::space_from_name(o.space);
    fjump::Dataset data = fjump::io::load_dataset(o.input, o.format, space);
    log_note("loaded " + std::to_string(data.xs.size()) + " observations");
    fjump::TestConfig cfg = make_config(o);
    fjump::TestResult res = fjump::run_test(data.xs, data.objects, o.cutoff, cfg);

    nlohmann::json j = fjump::io::result_to_json(res);
    j["input_digest"] = fnv1a_digest(o.input);
    j["config"] = config_to_json(cfg);
    j["cutoff"] = o.cutoff;
    j["space"] = o.space;
    j["tool_version"] = kVersion;
    emit(j.dump(2) + "\n", o.out);
    return 0;
}

int cmd_constants(const std::string& kernel, const std::string& out) {
    fjump::KernelConstants c =
        fjump::kernel_constants(fjump::KernelSpec{fjump::kernel_from_name(kernel)});
    std::ostringstream os;
    os << "{\n"
       << "  \"kernel\": \"" << kernel << "\",\n"
       << "  \"k10\": " << fmt12(c.k10) << ",\n"
       << "  \"k11\": " << fmt12(c.k11) << ",\n"
       << "  \"k12\": " << fmt12(c.k12) << ",\n"
       << "  \"k13\": " << fmt12(c.k13) << ",\n"
       << "  \"s_plus\": " << fmt12(c.s_plus) << ",\n"
       << "  \"s_minus\": " << fmt12(c.s_minus) << ",\n"
       << "  \"b_plus\": " << fmt12(c.b_plus) << ",\n"
       << "  \"b_minus\": " << fmt12(c.b_minus) << "\n"
       << "}\n";
    emit(os.str(), out);
    return 0;
}

int cmd_bandwidth(const CommonOpts& o) {
    fjump::Space space = fjump::space_from_name(o.space);
    fjump::Dataset data = fjump::io::load_dataset(o.input, o.format, space);
    const int min_side_points = 5;
    auto grid = fjump::candidate_grid(data.xs, o.cutoff, o.grid_size, min_side_points);
    fjump::CvPlan plan = fjump::make_cv_plan(data.xs, o.cutoff, o.folds, grid,
                                             o.seed, min_side_points);
    fjump::CvCurve curve =
        fjump::cv_select(data.xs, data.objects, o.cutoff, plan,
                         fjump::KernelSpec{fjump::kernel_from_name(o.kernel)});
    nlohmann::json j;
    j["selected_h"] = curve.selected;
    for (size_t i = 0; i < curve.h.size(); ++i) {
        nlohmann::json point{{"h", curve.h[i]}};
        if (std::isnan(curve.cv[i]))
            point["cv"] = nullptr;
        else
            point["cv"] = curve.cv[i];
        j["curve"].push_back(point);
    }
    j["failures"] = curve.failures;
    j["input_digest"] = fnv1a_digest(o.input);
    j["seed"] = o.seed;
    emit(j.dump(2) + "\n", o.out);
    return 0;
}

struct SimOpts {
    std::string space = "density";
    std::string signal = "piecewise_smooth";
    std::string method = "proposed";
    std::string out, curves_out;
    double jump = 0.0;
    int n = 500;
    int reps = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    int jobs = 0;
    bool table1 = false;
    bool power_curves = false;
};

void append_row(std::ostringstream& csv, const fjump::DgpSpec& spec,
                const fjump::SimResult& r) {
    csv << fjump::space_name(spec.space) << ',' << fjump::signal_name(spec.signal)
        << ',' << spec.jump << ',' << spec.n << ',' << r.replications << ','
        << fmt12(r.rejection_rate) << ',' << r.failures << ','
        << fmt12(r.mean_selected_h) << '\n';
}

int cmd_simulate(const SimOpts& o) {
    fjump::TestConfig cfg;
    cfg.alpha = o.alpha;
    fjump::TestMethod method = o.method == "local_constant"
                                   ? fjump::TestMethod::local_constant
                                   : fjump::TestMethod::proposed;

    std::ostringstream csv;
    csv << "space,signal,jump,n,replications,rejection_rate,failures,mean_h\n";

    auto run_cell = [&](fjump::DgpSpec spec) {
        spec.seed = o.seed;
        fjump::SimResult r =
            fjump::run_size_power(spec, o.reps, o.alpha, cfg, method, o.jobs);
        append_row(csv, spec, r);
        return r;
    };

    if (o.table1) {
        // Piecewise-smooth null and fixed-alternative rejection rates for
        // each space and sample size.
        const double power_jump[] = {1.5, 1.5, 0.25};
        const fjump::Space spaces[] = {fjump::Space::covariance,
                                       fjump::Space::density, fjump::Space::network};
        int si = 0;
        for (fjump::Space sp : spaces) {
            for (int n : {200, 500, 1000}) {
                fjump::DgpSpec spec;
                spec.space = sp;
                spec.signal = fjump::Signal::piecewise_smooth;
                spec.n = n;
                spec.jump = sp == fjump::Space::covariance ? 1.0 : 0.0;
                run_cell(spec);
                spec.jump = sp == fjump::Space::covariance
                                ? power_jump[si]
                                : power_jump[sp == fjump::Space::density ? 1 : 2];
                run_cell(spec);
            }
            ++si;
        }
    } else if (o.power_curves) {
        nlohmann::json curves = nlohmann::json::array();
        for (fjump::Space sp : {fjump::Space::density, fjump::Space::covariance,
                                fjump::Space::network}) {
            std::vector<double> jumps;
            if (sp == fjump::Space::density)
                for (double d = -2.0; d <= 2.001; d += 0.5) jumps.push_back(d);
            else if (sp == fjump::Space::covariance)
                for (double d = 0.5; d <= 2.001; d += 0.25) jumps.push_back(d);
            else
                for (double d = -0.3; d <= 0.3001; d += 0.1) jumps.push_back(d);
            for (fjump::Signal sig : {fjump::Signal::piecewise_smooth,
                                      fjump::Signal::piecewise_constant}) {
                nlohmann::json curve{{"space", fjump::space_name(sp)},
                                     {"signal", fjump::signal_name(sig)},
                                     {"method", o.method},
                                     {"n", o.n}};
                for (double j : jumps) {
                    fjump::DgpSpec spec;
                    spec.space = sp;
                    spec.signal = sig;
                    spec.jump = j;
                    spec.n = o.n;
                    fjump::SimResult r = run_cell(spec);
                    curve["jump"].push_back(j);
                    curve["rejection_rate"].push_back(r.rejection_rate);
                }
                curves.push_back(curve);
            }
        }
        if (!o.curves_out.empty()) emit(curves.dump(2) + "\n", o.curves_out);
    } else {
        fjump::DgpSpec spec;
        spec.space = fjump::space_from_name(o.space);
        spec.signal = fjump::signal_from_name(o.signal);
        spec.jump = o.jump;
        if (spec.space == fjump::Space::covariance && o.jump == 0.0) spec.jump = 1.0;
        spec.n = o.n;
        run_cell(spec);
    }
    emit(csv.str(), o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jump tests for metric-space conditional means"};
    app.require_subcommand(1);

    CommonOpts test_opts;
    auto* test_cmd = app.add_subcommand("test", "Run the jump test on a dataset");
    test_cmd->add_option("--input", test_opts.input, "Dataset file")->required();
    test_cmd->add_option("--format", test_opts.format, "csv or json (default: by extension)");
    test_cmd->add_option("--cutoff", test_opts.cutoff, "Cutoff c")->required();
    test_cmd->add_option("--space", test_opts.space,
                         "density, covariance, network, sphere, euclidean");
    test_cmd->add_option("--out", test_opts.out, "Output path (default: stdout)");
    add_config_flags(test_cmd, test_opts);

    std::string const_kernel = "epanechnikov", const_out;
    auto* const_cmd = app.add_subcommand("constants", "Print kernel constants");
    const_cmd->add_option("--kernel", const_kernel, "Kernel name")
        ->check(CLI::IsMember({"epanechnikov", "triangular", "uniform"}));
    const_cmd->add_option("--out", const_out, "Output path");

    CommonOpts bw_opts;
    auto* bw_cmd = app.add_subcommand("bandwidth", "Cross-validated bandwidth selection");
    bw_cmd->add_option("--input", bw_opts.input, "Dataset file")->required();
    bw_cmd->add_option("--format", bw_opts.format, "csv or json");
    bw_cmd->add_option("--cutoff", bw_opts.cutoff, "Cutoff c")->required();
    bw_cmd->add_option("--space", bw_opts.space, "Object space");
    bw_cmd->add_option("--out", bw_opts.out, "Output path");
    add_config_flags(bw_cmd, bw_opts);

    SimOpts sim_opts;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo size/power runs");
    sim_cmd->add_option("--space", sim_opts.space, "Object space")
        ->check(CLI::IsMember({"density", "covariance", "network"}));
    sim_cmd->add_option("--signal", sim_opts.signal,
                        "piecewise_smooth or piecewise_constant")
        ->check(CLI::IsMember({"piecewise_smooth", "piecewise_constant"}));
    sim_cmd->add_option("--jump", sim_opts.jump, "Jump magnitude");
    sim_cmd->add_option("--n", sim_opts.n, "Sample size")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--reps", sim_opts.reps, "Replications")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--alpha", sim_opts.alpha, "Nominal level");
    sim_cmd->add_option("--seed", sim_opts.seed, "Base RNG seed");
    sim_cmd->add_option("--jobs", sim_opts.jobs, "Worker threads (0 = auto)");
    sim_cmd->add_option("--method", sim_opts.method, "proposed or local_constant")
        ->check(CLI::IsMember({"proposed", "local_constant"}));
    sim_cmd->add_option("--out", sim_opts.out, "CSV output path");
    sim_cmd->add_option("--curves-out", sim_opts.curves_out,
                        "JSON output for --power-curves");
    sim_cmd->add_flag("--table1", sim_opts.table1, "Run the full size/power table");
    sim_cmd->add_flag("--power-curves", sim_opts.power_curves,
                      "Sweep jump magnitudes in all three spaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*test_cmd) return cmd_test(test_opts);
        if (*const_cmd) return cmd_constants(const_kernel, const_out);
        if (*bw_cmd) return cmd_bandwidth(bw_opts);
        if (*sim_cmd) return cmd_simulate(sim_opts);
    } catch (const fjump::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case fjump::errc::invalid_input:
            case fjump::errc::dimension_mismatch:
                return 2;
            case fjump::errc::degenerate_data:
            case fjump::errc::no_convergence:
                return 3;
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
