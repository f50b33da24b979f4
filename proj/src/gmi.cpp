#include "gmiperf/gmi.hpp"

#include <sstream>

namespace gmiperf {

const char* to_string(LsuKind kind) {
    switch (kind) {
    case LsuKind::BurstCoalescedAligned:    return "burst_coalesced_aligned";
    case LsuKind::BurstCoalescedNonAligned: return "burst_coalesced_non_aligned";
    case LsuKind::BurstCoalescedWriteAck:   return "burst_coalesced_write_ack";
    case LsuKind::BurstCoalescedCache:      return "burst_coalesced_cache";
    case LsuKind::AtomicPipelined:          return "atomic_pipelined";
    case LsuKind::Prefetching:              return "prefetching";
    }
    return "?";
}

std::optional<LsuKind> lsu_kind_from_string(std::string_view token) {
    if (token == "burst_coalesced_aligned")     return LsuKind::BurstCoalescedAligned;
    if (token == "burst_coalesced_non_aligned") return LsuKind::BurstCoalescedNonAligned;
    if (token == "burst_coalesced_write_ack")   return LsuKind::BurstCoalescedWriteAck;
    if (token == "burst_coalesced_cache")       return LsuKind::BurstCoalescedCache;
    if (token == "cache")                       return LsuKind::BurstCoalescedCache;
    if (token == "atomic_pipelined")            return LsuKind::AtomicPipelined;
    if (token == "prefetching")                 return LsuKind::Prefetching;
    return std::nullopt;
}

LsuKind normalize_kind(LsuKind kind) {
    return kind == LsuKind::Prefetching ? LsuKind::BurstCoalescedAligned : kind;
}

std::string Violation::describe() const {
    std::ostringstream os;
    if (lsu_index != npos)
        os << "lsu[" << lsu_index << "]: ";
    os << detail;
    return os.str();
}

namespace {

void check_positive(std::vector<Violation>& out, std::size_t idx,
                    std::uint64_t value, const char* field) {
    if (value == 0) {
        out.push_back({Violation::Kind::InvalidField, idx,
                       std::string(field) + " must be positive"});
    }
}

}  // namespace

std::vector<Violation> validate_kernel(const KernelModel& k) {
    std::vector<Violation> out;
    if (k.lsus.empty()) {
        out.push_back({Violation::Kind::EmptyKernel, Violation::npos,
                       "kernel has no load/store units"});
        return out;
    }
    for (std::size_t i = 0; i < k.lsus.size(); ++i) {
        const LsuDescriptor& d = k.lsus[i].desc;
        const AccessProfile& p = k.lsus[i].profile;
        check_positive(out, i, d.ls_width, "ls_width");
        check_positive(out, i, d.max_th, "max_th");
        check_positive(out, i, p.ls_acc, "ls_acc");
        check_positive(out, i, p.ls_bytes, "ls_bytes");
        check_positive(out, i, p.delta, "delta");
        check_positive(out, i, p.f, "f");
        if (d.burst_cnt > kMaxBurstCntWidth) {
            out.push_back({Violation::Kind::BurstCntOutOfRange, i,
                           "burst_cnt " + std::to_string(d.burst_cnt) +
                               " exceeds the sanity bound of " +
                               std::to_string(kMaxBurstCntWidth)});
        }
        if (normalize_kind(d.kind) == LsuKind::AtomicPipelined) {
            if (p.delta != 1) {
                out.push_back({Violation::Kind::AtomicStrideViolation, i,
                               "atomic LSUs always access with stride 1, got delta=" +
                                   std::to_string(p.delta)});
            }
            if (d.ls_width != kAtomicWidthBytes) {
                out.push_back({Violation::Kind::AtomicWidthViolation, i,
                               "atomic LSUs are " + std::to_string(kAtomicWidthBytes) +
                                   " bytes wide, got ls_width=" +
                                   std::to_string(d.ls_width)});
            }
        }
    }
    return out;
}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
    std::ostringstream os;
    os << "invalid kernel model:";
    for (const Violation& v : vs)
        os << "\n  " << v.describe();
    return os.str();
}

}  // namespace

InvalidKernelError::InvalidKernelError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

}  // namespace gmiperf
