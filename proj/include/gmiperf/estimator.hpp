#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gmiperf/dram.hpp"
#include "gmiperf/gmi.hpp"

namespace gmiperf {

enum class Boundedness { MemoryBound, ComputeBound };

const char* to_string(Boundedness b);

/// Timing breakdown of one LSU. weighted_time is this LSU's contribution to
/// the kernel total: delta * (t_ideal + t_ovh).
struct LsuEstimate {
    double t_ideal = 0.0;       // seconds, lower-bound transfer time
    double t_ovh = 0.0;         // seconds, row-miss and command overhead
    double burst_size = 0.0;    // bytes per effective DRAM burst
    double k_lsu = 0.0;         // occupancy coefficient of this LSU
    double weighted_time = 0.0; // delta * (t_ideal + t_ovh)
};

struct EstimateReport {
    Boundedness boundedness = Boundedness::ComputeBound;
    double occupancy_ratio = 0.0;
    // aligned with KernelModel::lsus; empty when compute bound
    std::vector<LsuEstimate> per_lsu;
    // total execution time in seconds; absent when compute bound (the compute
    // side needs a kernel-pipeline model, which is out of scope here)
    std::optional<double> t_exe;
    // sum(ls_acc * ls_bytes) / t_exe, absent when compute bound
    std::optional<double> effective_bandwidth;
};

/// DRAM-occupancy classification. The kernel is memory bound when the LSUs
/// keep the DRAM bus saturated:
///
///   sum_i k_lsu_i * ls_width_i / (dq * bl)  >=  1
///
/// k_lsu is the stride delta for burst-coalesced aligned and non-aligned
/// LSUs (strided bursts stream padding beats, so each request occupies the
/// bus delta times longer) and 1 for write-ack and atomic LSUs.
///
/// Throws UnsupportedLsuError for cache-modifier LSUs and InvalidKernelError
/// when validate_kernel reports violations.
std::pair<Boundedness, double> classify(const KernelModel& k, const DramSpec& d);

/// Minimum transfer time: ls_bytes * ls_acc / peak_bandwidth. Identical for
/// every LSU kind.
double t_ideal(const AccessProfile& p, const DramSpec& d);

/// Effective burst for aligned (and write-ack) LSUs: 2^burst_cnt * dq * bl.
/// burst_cnt is the binary logarithm of the transaction size.
double burst_size_aligned(const LsuDescriptor& lsu, const DramSpec& d);

/// Effective burst for non-aligned LSUs. The thread limit caps the request:
///
///   max_reqs = max_th * ls_width / (delta + 1)
///
/// When max_reqs fits the aligned burst, the stride fraction of it survives
/// as useful data (max_reqs / delta); otherwise the request degenerates to
/// ls_width / delta.
double burst_size_non_aligned(const LsuDescriptor& lsu, const AccessProfile& p,
                              const DramSpec& d);

/// Row-open overhead of a burst-coalesced LSU. Zero when the kernel has a
/// single LSU (bank interleaving hides row opens for one sequential stream);
/// otherwise one row-miss latency per effective burst:
///
///   (ls_acc * ls_bytes / burst_size) * t_row
///
/// with t_row = T_RCD + T_RP, plus T_WR for write-ack LSUs.
double t_ovh_burst(const LsuDescriptor& lsu, const AccessProfile& p,
                   const DramSpec& d, std::size_t n_lsu);

/// Per-access overhead of an atomic LSU. Each atomic op performs a read and
/// a write, t_row = 2 * (T_RCD + T_RP) + T_WR. When the operand is constant
/// across work items the compiler folds f ops into one atomic transaction,
/// dividing the per-access cost by f.
double t_ovh_atomic(const AccessProfile& p, const DramSpec& d);

/// Full estimate:
///
///   t_exe = sum_i delta_i * (t_ideal_i + t_ovh_i)
///
/// Compute-bound kernels get a report with boundedness and ratio only.
/// Write-ack t_ideal is scaled by dq * bl / ls_bytes (each burst carries a
/// single ls_bytes payload). Atomic overhead accumulates per access:
/// ls_acc * t_ovh_atomic, with 4-byte transfers.
///
/// Throws InvalidKernelError and UnsupportedLsuError.
EstimateReport estimate(const KernelModel& k, const DramSpec& d);

}  // namespace gmiperf
