#pragma once

#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "gmiperf/config.hpp"
#include "gmiperf/estimator.hpp"

namespace gmiperf {

enum class SweepAxis { Simd, NLsu, Delta, LsAcc, FMem };

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> sweep_axis_from_string(std::string_view token);

struct SweepSpec {
    SweepAxis axis = SweepAxis::Delta;
    std::vector<double> values;  // non-empty, strictly increasing

    /// nullptr when valid, otherwise a short reason.
    const char* invalid_reason() const;
};

struct SweepPoint {
    double value = 0.0;
    EstimateReport report;
    // delta-weighted totals; zero (unused) for compute-bound points
    double t_ideal_total = 0.0;
    double t_ovh_total = 0.0;
};

/// Rewrites one axis of the base config:
///   simd   - scales ls_width proportionally and sets f on burst-coalesced
///            aligned/non-aligned LSUs (ls_width/f must be integral); only f
///            moves for write-ack and atomic LSUs, whose width is fixed
///   n_lsu  - replicates the first LSU to the requested count
///   delta  - sets the stride on every non-atomic LSU
///   ls_acc - sets the access count on every LSU
///   f_mem  - sets the DRAM clock
/// Throws std::invalid_argument for values the axis cannot take.
KernelConfig apply_sweep_value(const KernelConfig& base, SweepAxis axis, double v);

/// One estimate per value, in order. Estimator errors propagate; compute-bound
/// points are regular results with no t_exe.
std::vector<SweepPoint> run_sweep(const KernelConfig& base, const SweepSpec& spec);

extern const char* const kSweepCsvHeader;

/// CSV per the fixed schema: axis,value,boundedness,t_ideal_total,
/// t_ovh_total,t_exe,effective_bandwidth,t_exe_norm. Times in seconds, full
/// precision; t_exe_norm is relative to the first memory-bound point;
/// compute-bound points leave the numeric columns empty.
void write_sweep_csv(std::ostream& os, SweepAxis axis,
                     const std::vector<SweepPoint>& points);

}  // namespace gmiperf
