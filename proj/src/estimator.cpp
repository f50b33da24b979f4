#include "gmiperf/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gmiperf {

const char* to_string(Boundedness b) {
    return b == Boundedness::MemoryBound ? "MemoryBound" : "ComputeBound";
}

namespace {

double occupancy_coefficient(LsuKind kind, std::uint32_t delta, std::size_t idx) {
    switch (normalize_kind(kind)) {
    case LsuKind::BurstCoalescedAligned:
    case LsuKind::BurstCoalescedNonAligned:
        return double(delta);
    case LsuKind::BurstCoalescedWriteAck:
    case LsuKind::AtomicPipelined:
        return 1.0;
    case LsuKind::BurstCoalescedCache:
        throw UnsupportedLsuError(
            "lsu[" + std::to_string(idx) +
            "]: cache-modifier burst-coalesced LSUs have no timing model");
    default:
        break;
    }
    throw UnsupportedLsuError("lsu[" + std::to_string(idx) + "]: unknown LSU kind");
}

}  // namespace

std::pair<Boundedness, double> classify(const KernelModel& k, const DramSpec& d) {
    if (auto violations = validate_kernel(k); !violations.empty())
        throw InvalidKernelError(std::move(violations));
    const double txn = double(min_transaction_bytes(d));
    double ratio = 0.0;
    for (std::size_t i = 0; i < k.lsus.size(); ++i) {
        const LsuInstance& inst = k.lsus[i];
        const double k_lsu = occupancy_coefficient(inst.desc.kind, inst.profile.delta, i);
        ratio += k_lsu * double(inst.desc.ls_width) / txn;
    }
    const Boundedness b =
        ratio >= 1.0 ? Boundedness::MemoryBound : Boundedness::ComputeBound;
    return {b, ratio};
}

double t_ideal(const AccessProfile& p, const DramSpec& d) {
    return double(p.ls_bytes) * double(p.ls_acc) / peak_bandwidth(d);
}

double burst_size_aligned(const LsuDescriptor& lsu, const DramSpec& d) {
    return std::ldexp(double(min_transaction_bytes(d)), int(lsu.burst_cnt));
}

double burst_size_non_aligned(const LsuDescriptor& lsu, const AccessProfile& p,
                              const DramSpec& d) {
    const double max_reqs =
        double(lsu.max_th) * double(lsu.ls_width) / double(p.delta + 1);
    const double cap = burst_size_aligned(lsu, d);
    if (max_reqs <= cap)
        return max_reqs / double(p.delta);
    return double(lsu.ls_width) / double(p.delta);
}

double t_ovh_burst(const LsuDescriptor& lsu, const AccessProfile& p,
                   const DramSpec& d, std::size_t n_lsu) {
    if (n_lsu < 2)
        return 0.0;
    double burst = 0.0;
    RowMissKind row = RowMissKind::Plain;
    switch (normalize_kind(lsu.kind)) {
    case LsuKind::BurstCoalescedAligned:
        burst = burst_size_aligned(lsu, d);
        break;
    case LsuKind::BurstCoalescedNonAligned:
        burst = burst_size_non_aligned(lsu, p, d);
        break;
    case LsuKind::BurstCoalescedWriteAck:
        burst = burst_size_aligned(lsu, d);
        row = RowMissKind::WriteAck;
        break;
    default:
        throw std::invalid_argument("t_ovh_burst wants a burst-coalesced LSU");
    }
    const double bursts = double(p.ls_acc) * double(p.ls_bytes) / burst;
    return bursts * row_miss_latency(d, row);
}

double t_ovh_atomic(const AccessProfile& p, const DramSpec& d) {
    const double t_row = row_miss_latency(d, RowMissKind::Atomic);
    return p.atomic_val_constant ? t_row / double(p.f) : t_row;
}

EstimateReport estimate(const KernelModel& k, const DramSpec& d) {
    auto [bound, ratio] = classify(k, d);  // also runs validate_kernel

    EstimateReport rep;
    rep.boundedness = bound;
    rep.occupancy_ratio = ratio;
    if (bound == Boundedness::ComputeBound)
        return rep;

    const std::size_t n_lsu = k.lsus.size();
    const double txn = double(min_transaction_bytes(d));
    double total = 0.0;
    double total_bytes = 0.0;

    rep.per_lsu.reserve(n_lsu);
    for (std::size_t i = 0; i < n_lsu; ++i) {
        const LsuDescriptor& desc = k.lsus[i].desc;
        const AccessProfile& p = k.lsus[i].profile;
        LsuEstimate e;
        double lsu_bytes = 0.0;

        switch (normalize_kind(desc.kind)) {
        case LsuKind::BurstCoalescedAligned:
            e.k_lsu = double(p.delta);
            e.burst_size = burst_size_aligned(desc, d);
            e.t_ideal = t_ideal(p, d);
            e.t_ovh = t_ovh_burst(desc, p, d, n_lsu);
            lsu_bytes = double(p.ls_acc) * double(p.ls_bytes);
            break;
        case LsuKind::BurstCoalescedNonAligned:
            if (double(desc.ls_width) > burst_size_aligned(desc, d)) {
                throw InvalidKernelError({{Violation::Kind::WidthExceedsBurstCap, i,
                                           "non-aligned ls_width exceeds the maximum "
                                           "transaction 2^burst_cnt*dq*bl"}});
            }
            e.k_lsu = double(p.delta);
            e.burst_size = burst_size_non_aligned(desc, p, d);
            e.t_ideal = t_ideal(p, d);
            e.t_ovh = t_ovh_burst(desc, p, d, n_lsu);
            lsu_bytes = double(p.ls_acc) * double(p.ls_bytes);
            break;
        case LsuKind::BurstCoalescedWriteAck:
            e.k_lsu = 1.0;
            e.burst_size = burst_size_aligned(desc, d);
            // each burst carries a single ls_bytes payload, the rest of the
            // transaction streams unused
            e.t_ideal = t_ideal(p, d) * (txn / double(p.ls_bytes));
            e.t_ovh = t_ovh_burst(desc, p, d, n_lsu);
            lsu_bytes = double(p.ls_acc) * double(p.ls_bytes);
            break;
        case LsuKind::AtomicPipelined:
            e.k_lsu = 1.0;
            e.burst_size = double(kAtomicWidthBytes);  // one 4-byte op per command
            e.t_ideal =
                double(kAtomicWidthBytes) * double(p.ls_acc) / peak_bandwidth(d);
            e.t_ovh = double(p.ls_acc) * t_ovh_atomic(p, d);
            lsu_bytes = double(p.ls_acc) * double(kAtomicWidthBytes);
            break;
        default:
            // classify already rejected cache LSUs
            throw UnsupportedLsuError("lsu[" + std::to_string(i) + "]: unmodeled kind");
        }

        e.weighted_time = double(p.delta) * (e.t_ideal + e.t_ovh);
        total += e.weighted_time;
        total_bytes += lsu_bytes;
        rep.per_lsu.push_back(e);
    }

    rep.t_exe = total;
    rep.effective_bandwidth = total_bytes / total;
    return rep;
}

}  // namespace gmiperf
