#pragma once

#include <cstdint>
#include <stdexcept>

namespace gmiperf {

/// Row-open penalty flavors. WriteAck adds the write-recovery time,
/// Atomic pays the open cost twice (read plus write) plus recovery.
enum class RowMissKind { Plain, WriteAck, Atomic };

/// External DRAM datasheet values. Geometry is in bytes/beats, timings in
/// seconds; no clock-domain conversion happens here.
struct DramSpec {
    std::uint32_t dq = 0;   // data bus width [bytes]
    std::uint32_t bl = 0;   // burst length [beats]
    double f_mem = 0.0;     // memory clock frequency [Hz]
    double t_rcd = 0.0;     // row activation time [s]
    double t_rp = 0.0;      // precharge (row miss) time [s]
    double t_wr = 0.0;      // write recovery time [s]

    DramSpec() = default;

    DramSpec(std::uint32_t dq_, std::uint32_t bl_, double f_mem_,
             double t_rcd_, double t_rp_, double t_wr_)
        : dq(dq_), bl(bl_), f_mem(f_mem_), t_rcd(t_rcd_), t_rp(t_rp_), t_wr(t_wr_) {
        if (const char* why = invalid_reason(*this))
            throw std::invalid_argument(why);
    }

    /// nullptr when s is well formed, otherwise a short reason.
    static const char* invalid_reason(const DramSpec& s) noexcept;
};

constexpr bool is_power_of_two(std::uint64_t v) noexcept {
    return v != 0 && (v & (v - 1)) == 0;
}

inline const char* DramSpec::invalid_reason(const DramSpec& s) noexcept {
    if (s.dq == 0)
        return "dram.dq must be positive";
    if (s.bl == 0)
        return "dram.bl must be positive";
    if (!(s.f_mem > 0.0))
        return "dram.f_mem must be positive";
    if (!(s.t_rcd > 0.0) || !(s.t_rp > 0.0) || !(s.t_wr > 0.0))
        return "dram timings must be positive";
    if (!is_power_of_two(std::uint64_t(s.dq) * s.bl))
        return "dram.dq * dram.bl must be a power of two";
    return nullptr;
}

/// Smallest transaction the DRAM accepts, in bytes (dq * bl).
inline std::uint64_t min_transaction_bytes(const DramSpec& d) {
    return std::uint64_t(d.dq) * d.bl;
}

/// Peak transfer rate in bytes/second. The factor 2 is the double data rate.
inline double peak_bandwidth(const DramSpec& d) {
    return double(d.dq) * 2.0 * d.f_mem;
}

/// Inter-command delay paid when an access lands on a closed row.
inline double row_miss_latency(const DramSpec& d, RowMissKind kind) {
    switch (kind) {
    case RowMissKind::Plain:
        return d.t_rcd + d.t_rp;
    case RowMissKind::WriteAck:
        return d.t_rcd + d.t_rp + d.t_wr;
    case RowMissKind::Atomic:
        return 2.0 * (d.t_rcd + d.t_rp) + d.t_wr;
    }
    return 0.0;
}

}  // namespace gmiperf
