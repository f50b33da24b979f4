#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmiperf/dram.hpp"
#include "gmiperf/gmi.hpp"

namespace gmiperf {

struct Request {
    std::uint32_t lsu = 0;
    std::uint64_t addr = 0;
    std::uint32_t len = 0;
    bool operator==(const Request&) const = default;
};

/// Ordered request trace for one or more LSUs. Also expressible as text,
/// one `lsu addr len` triple per line.
struct RequestStream {
    std::vector<Request> requests;

    /// Appends ls_acc requests of `bytes` each, starting at `base`, advancing
    /// stride*bytes per request (stride 1 = contiguous).
    void append_strided(std::uint32_t lsu, std::uint64_t base, std::uint64_t count,
                        std::uint32_t bytes, std::uint32_t stride);

    std::string to_trace() const;
    static RequestStream from_trace(std::string_view text);

    bool operator==(const RequestStream&) const = default;
};

struct LsuSimParams {
    std::uint32_t burst_cnt = 0;
    std::uint32_t max_th = 1;
};

struct SimConfig {
    DramSpec dram;
    std::uint64_t page_bytes = 0;  // row size, power of two
    std::vector<LsuSimParams> lsus;

    /// Per-LSU params from the kernel; page defaults to the widest LSU's
    /// maximum transaction, 2^burst_cnt * dq * bl.
    static SimConfig for_kernel(const KernelModel& k, const DramSpec& d);
};

struct SimResult {
    struct PerLsu {
        std::uint64_t bursts = 0;
        std::uint64_t row_hits = 0;      // open-row reuse
        std::uint64_t row_misses = 0;    // charged activations
        std::uint64_t row_opens_hidden = 0;  // sequential opens overlapped with streaming
        std::uint64_t bytes_requested = 0;
        std::uint64_t bytes_on_bus = 0;  // padded to whole minimum transactions
        bool operator==(const PerLsu&) const = default;
    };
    double total_time = 0.0;
    std::vector<PerLsu> per_lsu;
    std::uint64_t bytes_requested = 0;
    std::uint64_t bytes_on_bus = 0;
    std::uint64_t bursts = 0;
    bool operator==(const SimResult&) const = default;
};

/// Deterministic event simulation of the coalescer/arbiter/DRAM path.
///
/// Per-LSU coalescers grow a burst while requests stay contiguous, flushing
/// when the assembled bytes reach 2^burst_cnt * dq * bl, the thread count
/// reaches max_th, or the next request jumps. Assembled bursts drain through
/// a round-robin arbiter into a single-row-buffer DRAM: a burst landing on a
/// closed row pays T_RCD + T_RP unless it starts exactly where the previous
/// burst ended (sequential streaming keeps the activation off the critical
/// path, which is how a lone LSU reaches peak bandwidth). Transfer time is
/// bus bytes over peak bandwidth, serialized with the activations.
SimResult simulate(const RequestStream& stream, const SimConfig& cfg);

class NotApplicableError : public std::runtime_error {
public:
    explicit NotApplicableError(std::string message, bool compute_bound_ = false)
        : std::runtime_error(std::move(message)), compute_bound(compute_bound_) {}
    bool compute_bound = false;
};

struct CompareResult {
    double model_time = 0.0;
    double sim_time = 0.0;
    double rel_error = 0.0;  // |sim - model| / sim
    SimResult sim;
};

/// Builds per-LSU streams mirroring the kernel's access profiles: strided
/// sequences for aligned/non-aligned LSUs, seeded random indices within a
/// 2048-element window for write-ack. LSUs are placed in disjoint row ranges.
RequestStream streams_for_kernel(const KernelModel& k, const DramSpec& d,
                                 std::uint64_t seed);

/// Closed-form model vs. event simulation. Throws NotApplicableError for
/// compute-bound kernels (no model time exists) and for kernels with atomic
/// LSUs (the simulator has no read-modify-write path).
CompareResult compare(const KernelModel& k, const DramSpec& d,
                      std::uint64_t seed = 0);

}  // namespace gmiperf
