#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmiperf/dram.hpp"
#include "gmiperf/gmi.hpp"

namespace gmiperf {

struct RtlParamExtract;

struct ConfigError {
    enum class Code {
        Syntax,
        MissingKey,
        TypeMismatch,
        UnknownKey,
        BadValue,
        DuplicateKey,
    };
    Code code = Code::Syntax;
    std::string path;     // dotted key path, e.g. "dram.f_mem" or "lsu[2].kind"
    std::string message;
    std::string file;
    int line = 0;  // 1-based; 0 when no position applies
    int col = 0;

    /// "file:line:col: message (path)"
    std::string format() const;
};

const char* to_string(ConfigError::Code code);

struct DramConfig {
    std::uint32_t dq = 0;
    std::uint32_t bl = 0;
    double f_mem = 0.0;
    double t_rcd = 0.0;
    double t_rp = 0.0;
    double t_wr = 0.0;
    bool operator==(const DramConfig&) const = default;
};

struct KernelDefaults {
    std::string name;
    std::uint32_t delta = 1;
    std::uint32_t f = 1;
    bool operator==(const KernelDefaults&) const = default;
};

struct LsuConfig {
    LsuKind kind = LsuKind::BurstCoalescedAligned;
    std::uint32_t ls_width = 0;
    std::uint32_t burst_cnt = 0;
    std::uint32_t max_th = 0;
    std::uint64_t ls_acc = 0;
    std::uint32_t ls_bytes = 0;
    std::uint32_t delta = 1;  // resolved against the kernel default at parse time
    std::uint32_t f = 1;
    bool atomic_val_constant = false;
    bool operator==(const LsuConfig&) const = default;
};

/// Parsed form of the canonical kernel config file. Grammar: `key = value`
/// lines under `[dram]` / `[kernel]` headers plus one `[[lsu]]` block per
/// load/store unit; `#` starts a comment. See the README for the schema.
struct KernelConfig {
    int schema_version = 1;
    DramConfig dram;
    KernelDefaults kernel;
    std::vector<LsuConfig> lsus;
    bool operator==(const KernelConfig&) const = default;
};

constexpr int kConfigSchemaVersion = 1;

struct ParseResult {
    std::optional<KernelConfig> config;
    std::vector<ConfigError> errors;
    bool ok() const { return config.has_value() && errors.empty(); }
};

/// Parses and schema-validates config text. Collects every error it can
/// attribute (missing/unknown keys, type mismatches, out-of-range values),
/// each with file:line:col.
ParseResult parse_config(std::string_view text,
                         std::string_view file_label = "<config>");

/// Canonical serialization; parse(serialize(cfg)) reproduces cfg exactly.
std::string serialize_config(const KernelConfig& cfg);

struct BuiltKernel {
    KernelModel kernel;
    DramSpec dram;
};

/// Materializes the estimator inputs from a parsed config. Values extracted
/// from RTL override the config's burst_cnt (BURSTCOUNT_WIDTH) and max_th
/// (MAX_THREADS) on every LSU. Throws RtlConflictError on conflicting RTL
/// declarations and InvalidKernelError when the result fails validation.
BuiltKernel build_kernel(const KernelConfig& cfg,
                         const RtlParamExtract* rtl = nullptr);

}  // namespace gmiperf
