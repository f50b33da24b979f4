// gmiperf: pre-synthesis execution-time estimator for memory-bound HLS
// kernels, driven by the generated global memory interconnect and the DRAM
// datasheet. Subcommands: estimate, sweep, extract, validate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmiperf/config.hpp"
#include "gmiperf/estimator.hpp"
#include "gmiperf/oracle.hpp"
#include "gmiperf/report.hpp"
#include "gmiperf/rtl_scan.hpp"
#include "gmiperf/sweep.hpp"

namespace {

using namespace gmiperf;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitComputeBound = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Parses, optionally applies RTL overrides, and validates. Prints errors and
// returns nullopt on failure.
std::optional<BuiltKernel> load_kernel(const std::string& config_path,
                                       const std::vector<std::string>& rtl_paths) {
    const ParseResult parsed = parse_config(read_file(config_path), config_path);
    if (!parsed.ok()) {
        for (const ConfigError& e : parsed.errors)
            std::cerr << e.format() << "\n";
        return std::nullopt;
    }
    if (rtl_paths.empty())
        return build_kernel(*parsed.config);
    const RtlParamExtract rtl = scan_rtl_files(rtl_paths, default_rtl_param_names());
    return build_kernel(*parsed.config, &rtl);
}

// Writes to --out when given, stdout otherwise.
int emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write file: " << out_path << "\n";
        return kExitError;
    }
    out << text;
    return kExitOk;
}

int cmd_estimate(const std::string& config_path,
                 const std::vector<std::string>& rtl_paths,
                 const std::string& format, const std::string& out_path) {
    const auto built = load_kernel(config_path, rtl_paths);
    if (!built)
        return kExitError;
    const EstimateReport rep = estimate(built->kernel, built->dram);

    std::ostringstream os;
    if (format == "table")
        print_estimate_table(os, built->kernel, rep);
    else if (format == "csv")
        write_estimate_csv(os, built->kernel, rep);
    else
        os << estimate_to_json(built->kernel, rep);
    if (const int rc = emit(out_path, os.str()); rc != kExitOk)
        return rc;
    return rep.boundedness == Boundedness::ComputeBound ? kExitComputeBound
                                                        : kExitOk;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw std::invalid_argument("bad sweep value: " + item);
        values.push_back(v);
    }
    return values;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_name,
              const std::string& values_csv, const std::string& out_path) {
    const auto axis = sweep_axis_from_string(axis_name);
    if (!axis) {
        std::cerr << "unknown sweep axis: " << axis_name
                  << " (expected simd, n_lsu, delta, ls_acc or f_mem)\n";
        return kExitError;
    }
    SweepSpec spec;
    spec.axis = *axis;
    spec.values = parse_values(values_csv);
    if (const char* why = spec.invalid_reason()) {
        std::cerr << why << "\n";
        return kExitError;
    }

    const ParseResult parsed = parse_config(read_file(config_path), config_path);
    if (!parsed.ok()) {
        for (const ConfigError& e : parsed.errors)
            std::cerr << e.format() << "\n";
        return kExitError;
    }
    const std::vector<SweepPoint> points = run_sweep(*parsed.config, spec);
    std::ostringstream os;
    write_sweep_csv(os, *axis, points);
    return emit(out_path, os.str());
}

int cmd_extract(const std::vector<std::string>& rtl_paths) {
    const RtlParamExtract ex = scan_rtl_files(rtl_paths, default_rtl_param_names());
    for (const RtlParamHit& h : ex.hits)
        std::cout << h.name << " " << h.value << " " << h.file << ":" << h.line
                  << "\n";
    if (!ex.conflicts.empty()) {
        for (const RtlConflict& c : ex.conflicts)
            std::cerr << c.describe() << "\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_validate(const std::string& config_path, std::uint64_t seed) {
    const auto built = load_kernel(config_path, {});
    if (!built)
        return kExitError;
    try {
        const CompareResult cmp = compare(built->kernel, built->dram, seed);
        char err[32];
        std::snprintf(err, sizeof err, "%.4f%%", cmp.rel_error * 100.0);
        std::cout << "kernel          : " << built->kernel.name << "\n"
                  << "model t_exe     : " << format_eng_time(cmp.model_time) << "\n"
                  << "oracle time     : " << format_eng_time(cmp.sim_time) << "\n"
                  << "relative error  : " << err << "\n"
                  << "bursts issued   : " << cmp.sim.bursts << "\n"
                  << "row misses      : ";
        std::uint64_t misses = 0;
        for (const auto& pl : cmp.sim.per_lsu)
            misses += pl.row_misses;
        std::cout << misses << "\n";
        return kExitOk;
    } catch (const NotApplicableError& e) {
        std::cout << "not applicable: " << e.what() << "\n";
        return e.compute_bound ? kExitComputeBound : kExitError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gmiperf: execution-time estimator for memory-bound HLS kernels"};
    app.require_subcommand(1);

    std::string config_path, out_path, axis_name, values_csv;
    std::string format = "table";
    std::vector<std::string> rtl_paths;
    std::uint64_t seed = 1;

    CLI::App* est = app.add_subcommand(
        "estimate", "Estimate kernel execution time from a config file");
    est->add_option("--config", config_path, "kernel config file")->required();
    est->add_option("--rtl", rtl_paths, "HLS-generated RTL files to scan");
    est->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    est->add_option("--out", out_path, "write output to a file");

    CLI::App* swp = app.add_subcommand(
        "sweep", "Estimate across one design-space axis, emitting CSV");
    swp->add_option("--config", config_path, "base kernel config file")->required();
    swp->add_option("--axis", axis_name, "simd, n_lsu, delta, ls_acc or f_mem")
        ->required();
    swp->add_option("--values", values_csv, "comma-separated increasing values")
        ->required();
    swp->add_option("--out", out_path, "write CSV to a file");

    CLI::App* ext = app.add_subcommand(
        "extract", "Scan RTL files for BURSTCOUNT_WIDTH / MAX_THREADS");
    ext->add_option("--rtl", rtl_paths, "RTL files to scan")->required();

    CLI::App* val = app.add_subcommand(
        "validate", "Compare the model against the event-level simulator");
    val->add_option("--config", config_path, "kernel config file")->required();
    val->add_option("--seed", seed, "stream generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (est->parsed())
            return cmd_estimate(config_path, rtl_paths, format, out_path);
        if (swp->parsed())
            return cmd_sweep(config_path, axis_name, values_csv, out_path);
        if (ext->parsed())
            return cmd_extract(rtl_paths);
        if (val->parsed())
            return cmd_validate(config_path, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
