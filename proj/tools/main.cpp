// Command-line front end: kernel catalog queries, smoothing-spline fits,
// posterior means, path sampling and the self-verification suite.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure,
// 3 verification failure.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenspline/gp.hpp"
#include "greenspline/io.hpp"
#include "greenspline/kernels.hpp"
#include "greenspline/numerics.hpp"
#include "greenspline/spline.hpp"
#include "greenspline/verify.hpp"

using namespace greenspline;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("GREENSPLINE_SEED")) {
        const std::string_view text(env);
        std::uint64_t value = 0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw ValidationError("GREENSPLINE_SEED: cannot parse '" + std::string(text) +
                                  "' as an unsigned integer");
        return value;
    }
    return 0;
}

void check_format(const std::string& format) {
    if (format != "table" && format != "json")
        throw ValidationError("unknown format '" + format + "' (expected table or json)");
}

// Streams to `path` when given, to stdout otherwise.
void deliver(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_file(path, content);
}

std::string constraint_summary(const Kernel& k) {
    std::string out;
    for (const Constraint& c : k.constraints) {
        if (!out.empty()) out += "; ";
        out += c.label;
    }
    return out.empty() ? std::string("none") : out;
}

int run_list_kernels(const std::string& format) {
    check_format(format);
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const Kernel& k : kernel_catalog()) {
            nlohmann::json entry;
            entry["id"] = std::string(k.id);
            entry["formula"] = std::string(k.formula);
            entry["symmetric"] = k.symmetric;
            nlohmann::json cons = nlohmann::json::array();
            for (const Constraint& c : k.constraints) cons.push_back(std::string(c.label));
            entry["constraints"] = cons;
            arr.push_back(entry);
        }
        std::cout << arr.dump(2) << '\n';
        return 0;
    }
    std::size_t id_width = 0, formula_width = 0;
    for (const Kernel& k : kernel_catalog()) {
        id_width = std::max(id_width, k.id.size());
        formula_width = std::max(formula_width, k.formula.size());
    }
    for (const Kernel& k : kernel_catalog())
        std::cout << std::left << std::setw(static_cast<int>(id_width) + 2)
                  << std::string(k.id)
                  << std::setw(static_cast<int>(formula_width) + 2)
                  << std::string(k.formula) << constraint_summary(k) << '\n';
    return 0;
}

int run_eval(const std::string& kernel, double s, double t) {
    const Kernel& k = kernel_by_id(kernel);
    std::cout << format_double(k(s, t)) << '\n';
    return 0;
}

int run_gram(const std::string& kernel, const std::string& grid_spec,
             const std::string& out) {
    const Kernel& k = kernel_by_id(kernel);
    const Eigen::VectorXd grid = parse_grid_spec(grid_spec);
    const Eigen::MatrixXd g = gram(k, grid);
    std::ostringstream buf;
    write_matrix_csv(buf, grid, g);
    deliver(out, buf.str());
    return 0;
}

// fit writes <base>.csv (curve) and <base>.json (artifact); --out names
// the csv, the json sits next to it.
int run_fit(const std::string& input, const std::string& kernel, double lambda,
            const std::string& grid_spec, const std::string& out) {
    const Kernel& k = kernel_by_id(kernel);
    const DataSet data = read_dataset_csv(input);
    const Eigen::VectorXd grid = parse_grid_spec(grid_spec);

    const SplineFit f = fit(k, data, lambda);
    if (!f.pinned_times().empty()) {
        std::cerr << "note: observations at pinned times (the fit cannot match them):";
        for (double p : f.pinned_times()) std::cerr << ' ' << format_double(p);
        std::cerr << '\n';
    }

    std::filesystem::path csv_path(out.empty() ? "fit.csv" : out);
    std::filesystem::path json_path = csv_path;
    json_path.replace_extension(".json");

    std::ostringstream curve;
    write_curve_csv(curve, "theta_hat", grid, f.evaluate(grid));
    write_text_file(csv_path, curve.str());

    std::ostringstream artifact;
    write_fit_json(artifact, f);
    write_text_file(json_path, artifact.str());

    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << '\n';
    return 0;
}

int run_map(const std::string& input, const std::string& kernel, double tau_sq,
            const std::string& grid_spec, const std::string& out) {
    const Kernel& k = kernel_by_id(kernel);
    const DataSet data = read_dataset_csv(input);
    const Eigen::VectorXd grid = parse_grid_spec(grid_spec);
    const GpPrior prior{&k, 1.0};
    const Eigen::VectorXd posterior = map_estimate(prior, data, tau_sq, grid);
    std::ostringstream buf;
    write_curve_csv(buf, "theta_map", grid, posterior);
    deliver(out, buf.str());
    return 0;
}

int run_sample(const std::string& kernel, const std::string& grid_spec, int n,
               const std::optional<std::uint64_t>& seed, const std::string& out) {
    const Kernel& k = kernel_by_id(kernel);
    const Eigen::VectorXd grid = parse_grid_spec(grid_spec);
    const RandomSource source(resolve_seed(seed));
    const PathSet paths = sample_paths(k, grid, n, source);
    std::ostringstream buf;
    write_paths_csv(buf, paths);
    deliver(out, buf.str());
    return 0;
}

int run_verify_cmd(const VerifyOptions& options) {
    const std::vector<VerifyCheck> checks = run_verify(options);
    std::size_t width = 0;
    for (const VerifyCheck& c : checks) width = std::max(width, c.name.size());
    bool all_passed = true;
    for (const VerifyCheck& c : checks) {
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << std::left
                  << std::setw(static_cast<int>(width) + 2) << c.name
                  << "residual " << format_double(c.residual) << "  tolerance "
                  << format_double(c.tolerance) << '\n';
        all_passed = all_passed && c.passed;
    }
    std::cout << (all_passed ? "verification passed" : "verification FAILED") << '\n';
    return all_passed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's-function smoothing splines and Gaussian processes on [0, 1]"};
    app.require_subcommand(1);

    std::string kernel, grid_spec, input, out, format = "table";
    double s = 0.0, t = 0.0, lambda = 0.0, tau_sq = 0.0;
    int n = 1;
    std::optional<std::uint64_t> seed;
    VerifyOptions verify_options;
    double verify_tol = 0.0;

    CLI::App* list = app.add_subcommand("list-kernels", "Print the kernel catalog");
    list->add_option("--format", format, "table or json");

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a kernel at (s, t)");
    eval->add_option("--kernel", kernel, "catalog kernel id")->required();
    eval->add_option("--s", s, "first argument")->required();
    eval->add_option("--t", t, "second argument")->required();

    CLI::App* gram_cmd = app.add_subcommand("gram", "Gram matrix over a grid, as CSV");
    gram_cmd->add_option("--kernel", kernel)->required();
    gram_cmd->add_option("--grid", grid_spec, "start:stop:step")->required();
    gram_cmd->add_option("--out", out, "output file (default: stdout)");

    CLI::App* fit_cmd = app.add_subcommand("fit", "Smoothing-spline fit of a t,y CSV");
    fit_cmd->add_option("input", input, "observations CSV with header t,y")->required();
    fit_cmd->add_option("--kernel", kernel)->required();
    fit_cmd->add_option("--lambda", lambda, "penalty weight (>= 0)")->required();
    fit_cmd->add_option("--grid", grid_spec, "evaluation grid start:stop:step")->required();
    fit_cmd->add_option("--out", out, "curve CSV path (default fit.csv); the JSON artifact sits next to it");

    CLI::App* map_cmd = app.add_subcommand("map", "Posterior-mean curve of the process prior");
    map_cmd->add_option("input", input, "observations CSV with header t,y")->required();
    map_cmd->add_option("--kernel", kernel)->required();
    map_cmd->add_option("--tau-sq", tau_sq, "signal-to-noise ratio (> 0)")->required();
    map_cmd->add_option("--grid", grid_spec)->required();
    map_cmd->add_option("--out", out, "output file (default: stdout)");

    CLI::App* sample_cmd = app.add_subcommand("sample", "Draw process paths on a grid");
    sample_cmd->add_option("--kernel", kernel)->required();
    sample_cmd->add_option("--grid", grid_spec)->required();
    sample_cmd->add_option("--n", n, "number of paths")->required();
    sample_cmd->add_option("--seed", seed, "RNG seed (default: GREENSPLINE_SEED, then 0)");
    sample_cmd->add_option("--out", out, "output file (default: stdout)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "Re-derive the analytic claims numerically");
    verify_cmd->add_option("--suite", verify_options.suite, "kernels, series, spline or all");
    verify_cmd->add_option("--N", verify_options.truncation, "series truncation order");
    CLI::Option* tol_opt =
        verify_cmd->add_option("--tol", verify_tol, "override every selected tolerance");
    verify_cmd->add_option("--seed", seed, "seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (list->parsed()) return run_list_kernels(format);
        if (eval->parsed()) return run_eval(kernel, s, t);
        if (gram_cmd->parsed()) return run_gram(kernel, grid_spec, out);
        if (fit_cmd->parsed()) return run_fit(input, kernel, lambda, grid_spec, out);
        if (map_cmd->parsed()) return run_map(input, kernel, tau_sq, grid_spec, out);
        if (sample_cmd->parsed()) return run_sample(kernel, grid_spec, n, seed, out);
        if (verify_cmd->parsed()) {
            if (*tol_opt) verify_options.tolerance_override = verify_tol;
            verify_options.seed = resolve_seed(seed);
            return run_verify_cmd(verify_options);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
