#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmiperf {

/// LSU flavors the HLS compiler instantiates on the global memory
/// interconnect. Cache-modifier LSUs parse but have no timing model and are
/// rejected by the estimator.
enum class LsuKind {
    BurstCoalescedAligned,
    BurstCoalescedNonAligned,
    BurstCoalescedWriteAck,
    BurstCoalescedCache,
    AtomicPipelined,
    Prefetching,
};

const char* to_string(LsuKind kind);
std::optional<LsuKind> lsu_kind_from_string(std::string_view token);

/// Prefetching LSUs are compiled as burst-coalesced aligned hardware; every
/// other kind maps to itself. Idempotent.
LsuKind normalize_kind(LsuKind kind);

/// Synthesized hardware parameters of one load/store unit.
struct LsuDescriptor {
    LsuKind kind = LsuKind::BurstCoalescedAligned;
    std::uint32_t ls_width = 0;   // bytes the kernel presents per request
    std::uint32_t burst_cnt = 0;  // Avalon burst_count port width (log2 of max bursts)
    std::uint32_t max_th = 0;     // max threads coalesced into one burst
};

/// User-supplied dynamic facts for one LSU.
struct AccessProfile {
    std::uint64_t ls_acc = 0;   // number of accesses issued
    std::uint32_t ls_bytes = 0; // bytes per single access
    std::uint32_t delta = 1;    // address stride, 1 = contiguous
    std::uint32_t f = 1;        // vectorization factor SIMD * unroll
    bool atomic_val_constant = false;
};

struct LsuInstance {
    LsuDescriptor desc;
    AccessProfile profile;
};

/// The full global memory interconnect of one kernel.
struct KernelModel {
    std::string name;
    std::vector<LsuInstance> lsus;
};

constexpr std::uint32_t kMaxBurstCntWidth = 16;  // sanity bound; real IPs are single digit
constexpr std::uint32_t kAtomicWidthBytes = 4;   // atomic LSUs move 32-bit integers

struct Violation {
    enum class Kind {
        EmptyKernel,
        InvalidField,
        BurstCntOutOfRange,
        AtomicStrideViolation,
        AtomicWidthViolation,
        WidthExceedsBurstCap,
    };
    Kind kind = Kind::InvalidField;
    // index into KernelModel::lsus, or npos for kernel-level violations
    std::size_t lsu_index = npos;
    std::string detail;

    static constexpr std::size_t npos = std::size_t(-1);
    std::string describe() const;
};

/// Structural checks on a kernel model. Returns every violation found;
/// empty means the model is safe to feed to the estimator.
std::vector<Violation> validate_kernel(const KernelModel& k);

class InvalidKernelError : public std::runtime_error {
public:
    explicit InvalidKernelError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

class UnsupportedLsuError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gmiperf
