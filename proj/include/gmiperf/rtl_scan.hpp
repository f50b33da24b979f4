#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmiperf {

struct RtlParamHit {
    std::string name;
    std::int64_t value = 0;
    std::string file;
    int line = 0;  // 1-based
};

struct RtlConflict {
    std::string name;
    std::vector<RtlParamHit> hits;  // the disagreeing declarations
    std::string describe() const;
};

/// Result of scanning RTL text for integer parameter declarations.
/// values holds one entry per unconflicted name; hits records every match.
struct RtlParamExtract {
    std::map<std::string, std::int64_t> values;
    std::vector<RtlParamHit> hits;
    std::vector<RtlConflict> conflicts;
};

/// Line-oriented scan for `parameter <NAME> = <integer>` declarations,
/// restricted to the requested names. Matches whole identifiers only,
/// tolerates `integer`/`signed`/range qualifiers, sized literals such as
/// 5'd16, and trailing commas or semicolons. Not a Verilog parser.
RtlParamExtract extract_rtl_params(std::string_view text,
                                   const std::vector<std::string>& names,
                                   std::string_view file_label = "<rtl>");

/// Reads and scans files in lexicographic path order, merging hits and
/// recomputing conflicts. Throws std::runtime_error on unreadable files.
RtlParamExtract scan_rtl_files(std::vector<std::string> paths,
                               const std::vector<std::string>& names);

class RtlConflictError : public std::runtime_error {
public:
    explicit RtlConflictError(const std::vector<RtlConflict>& conflicts);
};

/// Parameter names the build flow looks for in HLS-generated RTL.
const std::vector<std::string>& default_rtl_param_names();

}  // namespace gmiperf
