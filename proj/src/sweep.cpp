#include "gmiperf/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gmiperf/report.hpp"

namespace gmiperf {

const char* to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::Simd:  return "simd";
    case SweepAxis::NLsu:  return "n_lsu";
    case SweepAxis::Delta: return "delta";
    case SweepAxis::LsAcc: return "ls_acc";
    case SweepAxis::FMem:  return "f_mem";
    }
    return "?";
}

std::optional<SweepAxis> sweep_axis_from_string(std::string_view token) {
    if (token == "simd")   return SweepAxis::Simd;
    if (token == "n_lsu")  return SweepAxis::NLsu;
    if (token == "delta")  return SweepAxis::Delta;
    if (token == "ls_acc") return SweepAxis::LsAcc;
    if (token == "f_mem")  return SweepAxis::FMem;
    return std::nullopt;
}

const char* SweepSpec::invalid_reason() const {
    if (values.empty())
        return "sweep needs at least one value";
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (!(values[i] < values[i + 1]))
            return "sweep values must be strictly increasing";
    return nullptr;
}

namespace {

std::uint64_t integral_value(SweepAxis axis, double v, std::uint64_t max) {
    if (!(v >= 1.0) || v != std::floor(v) || v > double(max))
        throw std::invalid_argument(std::string("axis ") + to_string(axis) +
                                    ": value must be an integer >= 1");
    return std::uint64_t(v);
}

bool is_width_scaled(LsuKind kind) {
    switch (normalize_kind(kind)) {
    case LsuKind::BurstCoalescedAligned:
    case LsuKind::BurstCoalescedNonAligned:
        return true;
    default:
        return false;  // write-ack and atomic widths are fixed by the compiler
    }
}

}  // namespace

KernelConfig apply_sweep_value(const KernelConfig& base, SweepAxis axis, double v) {
    KernelConfig cfg = base;
    switch (axis) {
    case SweepAxis::Simd: {
        const std::uint32_t f = std::uint32_t(
            integral_value(axis, v, std::numeric_limits<std::uint32_t>::max()));
        cfg.kernel.f = f;
        for (LsuConfig& lsu : cfg.lsus) {
            if (is_width_scaled(lsu.kind)) {
                if (lsu.f == 0 || lsu.ls_width % lsu.f != 0)
                    throw std::invalid_argument(
                        "axis simd: ls_width is not a multiple of the base f");
                lsu.ls_width = lsu.ls_width / lsu.f * f;
            }
            lsu.f = f;
        }
        break;
    }
    case SweepAxis::NLsu: {
        const std::uint64_t n = integral_value(axis, v, 1u << 20);
        if (cfg.lsus.empty())
            throw std::invalid_argument("axis n_lsu: base config has no LSUs");
        cfg.lsus.assign(std::size_t(n), cfg.lsus.front());
        break;
    }
    case SweepAxis::Delta: {
        const std::uint32_t delta = std::uint32_t(
            integral_value(axis, v, std::numeric_limits<std::uint32_t>::max()));
        cfg.kernel.delta = delta;
        for (LsuConfig& lsu : cfg.lsus)
            if (normalize_kind(lsu.kind) != LsuKind::AtomicPipelined)
                lsu.delta = delta;
        break;
    }
    case SweepAxis::LsAcc: {
        const std::uint64_t acc = integral_value(
            axis, v, std::uint64_t(1) << 53);  // exactly representable range
        for (LsuConfig& lsu : cfg.lsus)
            lsu.ls_acc = acc;
        break;
    }
    case SweepAxis::FMem:
        if (!(v > 0.0))
            throw std::invalid_argument("axis f_mem: value must be positive");
        cfg.dram.f_mem = v;
        break;
    }
    return cfg;
}

std::vector<SweepPoint> run_sweep(const KernelConfig& base, const SweepSpec& spec) {
    if (const char* why = spec.invalid_reason())
        throw std::invalid_argument(why);
    std::vector<SweepPoint> points;
    points.reserve(spec.values.size());
    for (double v : spec.values) {
        const KernelConfig cfg = apply_sweep_value(base, spec.axis, v);
        const BuiltKernel built = build_kernel(cfg);
        SweepPoint pt;
        pt.value = v;
        pt.report = estimate(built.kernel, built.dram);
        for (std::size_t i = 0; i < pt.report.per_lsu.size(); ++i) {
            const double delta = double(built.kernel.lsus[i].profile.delta);
            pt.t_ideal_total += delta * pt.report.per_lsu[i].t_ideal;
            pt.t_ovh_total += delta * pt.report.per_lsu[i].t_ovh;
        }
        points.push_back(std::move(pt));
    }
    return points;
}

const char* const kSweepCsvHeader =
    "axis,value,boundedness,t_ideal_total,t_ovh_total,t_exe,"
    "effective_bandwidth,t_exe_norm";

void write_sweep_csv(std::ostream& os, SweepAxis axis,
                     const std::vector<SweepPoint>& points) {
    os << kSweepCsvHeader << "\n";
    std::optional<double> first_mb;
    for (const SweepPoint& pt : points)
        if (!first_mb && pt.report.t_exe)
            first_mb = *pt.report.t_exe;
    for (const SweepPoint& pt : points) {
        os << to_string(axis) << "," << format_double(pt.value) << ","
           << to_string(pt.report.boundedness) << ",";
        if (pt.report.t_exe) {
            os << format_double(pt.t_ideal_total) << ","
               << format_double(pt.t_ovh_total) << ","
               << format_double(*pt.report.t_exe) << ","
               << format_double(*pt.report.effective_bandwidth) << ","
               << format_double(*pt.report.t_exe / *first_mb);
        } else {
            os << ",,,,";  // compute bound: nothing to report
        }
        os << "\n";
    }
}

}  // namespace gmiperf
