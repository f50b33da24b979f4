#include "gmiperf/config.hpp"

#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "gmiperf/rtl_scan.hpp"

namespace gmiperf {

const char* to_string(ConfigError::Code code) {
    switch (code) {
    case ConfigError::Code::Syntax:       return "syntax error";
    case ConfigError::Code::MissingKey:   return "missing key";
    case ConfigError::Code::TypeMismatch: return "type mismatch";
    case ConfigError::Code::UnknownKey:   return "unknown key";
    case ConfigError::Code::BadValue:     return "bad value";
    case ConfigError::Code::DuplicateKey: return "duplicate key";
    }
    return "error";
}

std::string ConfigError::format() const {
    std::ostringstream os;
    os << file << ":" << line << ":" << col << ": " << to_string(code) << ": "
       << message;
    if (!path.empty())
        os << " (" << path << ")";
    return os.str();
}

namespace {

struct RawEntry {
    std::string key;
    std::string value;
    int line = 0;
    int key_col = 0;
    int value_col = 0;
};

struct RawSection {
    std::vector<RawEntry> entries;
    int line = 0;  // header line; 0 when the section never appeared
    bool present = false;
};

struct RawDocument {
    RawSection global;   // keys before any section header
    RawSection dram;
    RawSection kernel;
    std::vector<RawSection> lsus;
};

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

bool is_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
public:
    Parser(std::string_view text, std::string_view file)
        : text_(text), file_(file) {}

    ParseResult run() {
        scan_lines();
        if (!errors_.empty() && fatal_)
            return {std::nullopt, std::move(errors_)};
        KernelConfig cfg = apply_schema();
        if (!errors_.empty())
            return {std::nullopt, std::move(errors_)};
        return {std::move(cfg), {}};
    }

private:
    void error(ConfigError::Code code, std::string path, std::string message,
               int line, int col) {
        errors_.push_back({code, std::move(path), std::move(message),
                           std::string(file_), line, col});
    }

    // ---- line scan ------------------------------------------------------

    void scan_lines() {
        RawSection* current = &doc_.global;
        std::string current_name = "";
        std::size_t start = 0;
        int line_no = 0;
        while (start <= text_.size()) {
            const std::size_t nl = text_.find('\n', start);
            std::string_view line = text_.substr(
                start,
                nl == std::string_view::npos ? text_.size() - start : nl - start);
            ++line_no;
            scan_line(line, line_no, current, current_name);
            if (nl == std::string_view::npos)
                break;
            start = nl + 1;
        }
    }

    void scan_line(std::string_view raw, int line_no, RawSection*& current,
                   std::string& current_name) {
        // strip comment, honoring quotes
        bool in_quote = false;
        std::size_t cut = raw.size();
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == '"')
                in_quote = !in_quote;
            else if (raw[i] == '#' && !in_quote) {
                cut = i;
                break;
            }
        }
        const std::string_view line = trim(raw.substr(0, cut));
        if (line.empty())
            return;

        if (line.front() == '[') {
            if (line == "[[lsu]]") {
                doc_.lsus.push_back({});
                doc_.lsus.back().present = true;
                doc_.lsus.back().line = line_no;
                current = &doc_.lsus.back();
                current_name = "lsu[" + std::to_string(doc_.lsus.size() - 1) + "]";
                return;
            }
            if (line == "[dram]" || line == "[kernel]") {
                RawSection& s = line == "[dram]" ? doc_.dram : doc_.kernel;
                if (s.present) {
                    error(ConfigError::Code::DuplicateKey,
                          std::string(line.substr(1, line.size() - 2)),
                          "section declared twice", line_no, 1);
                    fatal_ = true;
                    return;
                }
                s.present = true;
                s.line = line_no;
                current = &s;
                current_name = std::string(line.substr(1, line.size() - 2));
                return;
            }
            if (line == "[lsu]") {
                error(ConfigError::Code::Syntax, "lsu",
                      "LSU blocks use [[lsu]]", line_no, 1);
                fatal_ = true;
                return;
            }
            error(ConfigError::Code::UnknownKey,
                  std::string(trim(line.substr(1, line.find_last_of(']') == std::string_view::npos
                                                       ? line.size() - 1
                                                       : line.find_last_of(']') - 1))),
                  "unknown section", line_no, 1);
            fatal_ = true;
            return;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            error(ConfigError::Code::Syntax, current_name,
                  "expected `key = value`", line_no, 1);
            fatal_ = true;
            return;
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const int key_col = int(raw.find(key)) + 1;
        const int value_col =
            value.empty() ? int(eq) + 2 : int(raw.find(value, raw.find('=')) ) + 1;

        if (key.empty() ||
            !std::all_of(key.begin(), key.end(), is_key_char) ||
            std::isdigit(static_cast<unsigned char>(key.front()))) {
            error(ConfigError::Code::Syntax, current_name,
                  "malformed key before `=`", line_no, 1);
            fatal_ = true;
            return;
        }
        if (value.empty()) {
            error(ConfigError::Code::Syntax,
                  current_name.empty() ? std::string(key)
                                       : current_name + "." + std::string(key),
                  "missing value after `=`", line_no, value_col);
            fatal_ = true;
            return;
        }
        for (const RawEntry& e : current->entries) {
            if (e.key == key) {
                error(ConfigError::Code::DuplicateKey,
                      current_name.empty() ? std::string(key)
                                           : current_name + "." + std::string(key),
                      "key already set at line " + std::to_string(e.line),
                      line_no, key_col);
                return;
            }
        }
        current->entries.push_back({std::string(key), std::string(value), line_no,
                                    key_col, value_col});
    }

    // ---- typed lookups ---------------------------------------------------

    const RawEntry* find(const RawSection& s, std::string_view key) {
        for (const RawEntry& e : s.entries)
            if (e.key == key)
                return &e;
        return nullptr;
    }

    const RawEntry* require(const RawSection& s, const std::string& section_name,
                            std::string_view key) {
        if (const RawEntry* e = find(s, key))
            return e;
        error(ConfigError::Code::MissingKey, section_name + "." + std::string(key),
              "required key not found", s.line, 1);
        return nullptr;
    }

    bool to_u64(const RawEntry& e, const std::string& path, std::uint64_t& out,
                std::uint64_t min, std::uint64_t max) {
        const std::string& v = e.value;
        std::uint64_t parsed = 0;
        auto [ptr, ec] =
            std::from_chars(v.data(), v.data() + v.size(), parsed, 10);
        if (ec != std::errc() || ptr != v.data() + v.size()) {
            error(ConfigError::Code::TypeMismatch, path,
                  "expected an unsigned integer, got `" + v + "`", e.line,
                  e.value_col);
            return false;
        }
        if (parsed < min || parsed > max) {
            error(ConfigError::Code::BadValue, path,
                  "value " + v + " outside [" + std::to_string(min) + ", " +
                      std::to_string(max) + "]",
                  e.line, e.value_col);
            return false;
        }
        out = parsed;
        return true;
    }

    bool to_u32(const RawEntry& e, const std::string& path, std::uint32_t& out,
                std::uint64_t min = 1,
                std::uint64_t max = std::numeric_limits<std::uint32_t>::max()) {
        std::uint64_t v = 0;
        if (!to_u64(e, path, v, min, max))
            return false;
        out = std::uint32_t(v);
        return true;
    }

    bool to_real(const RawEntry& e, const std::string& path, double& out,
                 bool positive) {
        const std::string& v = e.value;
        errno = 0;
        char* end = nullptr;
        const double parsed = std::strtod(v.c_str(), &end);
        if (end != v.c_str() + v.size() || errno == ERANGE) {
            error(ConfigError::Code::TypeMismatch, path,
                  "expected a real number, got `" + v + "`", e.line, e.value_col);
            return false;
        }
        if (positive && !(parsed > 0.0)) {
            error(ConfigError::Code::BadValue, path, "value must be positive",
                  e.line, e.value_col);
            return false;
        }
        out = parsed;
        return true;
    }

    bool to_string_value(const RawEntry& e, const std::string& path,
                         std::string& out) {
        const std::string& v = e.value;
        if (v.size() < 2 || v.front() != '"' || v.back() != '"' ||
            v.find('"', 1) != v.size() - 1) {
            error(ConfigError::Code::TypeMismatch, path,
                  "expected a quoted string", e.line, e.value_col);
            return false;
        }
        out = v.substr(1, v.size() - 2);
        return true;
    }

    bool to_bool(const RawEntry& e, const std::string& path, bool& out) {
        if (e.value == "true") {
            out = true;
            return true;
        }
        if (e.value == "false") {
            out = false;
            return true;
        }
        error(ConfigError::Code::TypeMismatch, path,
              "expected true or false, got `" + e.value + "`", e.line,
              e.value_col);
        return false;
    }

    void reject_unknown(const RawSection& s, const std::string& section_name,
                        std::initializer_list<std::string_view> known) {
        for (const RawEntry& e : s.entries) {
            bool found = false;
            for (std::string_view k : known)
                if (e.key == k)
                    found = true;
            if (!found)
                error(ConfigError::Code::UnknownKey,
                      section_name.empty() ? e.key : section_name + "." + e.key,
                      "unknown key", e.line, e.key_col);
        }
    }

    // ---- schema ----------------------------------------------------------

    KernelConfig apply_schema() {
        KernelConfig cfg;

        reject_unknown(doc_.global, "", {"schema_version"});
        if (const RawEntry* e = find(doc_.global, "schema_version")) {
            std::uint64_t v = 0;
            if (to_u64(*e, "schema_version", v, 0,
                       std::numeric_limits<std::uint64_t>::max()) &&
                v != kConfigSchemaVersion) {
                error(ConfigError::Code::BadValue, "schema_version",
                      "unsupported schema version " + std::to_string(v) +
                          " (expected " + std::to_string(kConfigSchemaVersion) + ")",
                      e->line, e->value_col);
            }
            cfg.schema_version = int(v);
        } else {
            error(ConfigError::Code::MissingKey, "schema_version",
                  "required key not found", 1, 1);
        }

        if (!doc_.dram.present) {
            error(ConfigError::Code::MissingKey, "dram", "missing [dram] section",
                  1, 1);
        } else {
            apply_dram(cfg.dram);
        }
        if (!doc_.kernel.present) {
            error(ConfigError::Code::MissingKey, "kernel",
                  "missing [kernel] section", 1, 1);
        } else {
            apply_kernel(cfg.kernel);
        }
        for (std::size_t i = 0; i < doc_.lsus.size(); ++i)
            cfg.lsus.push_back(apply_lsu(doc_.lsus[i], i, cfg.kernel));
        return cfg;
    }

    void apply_dram(DramConfig& out) {
        const RawSection& s = doc_.dram;
        reject_unknown(s, "dram", {"dq", "bl", "f_mem", "t_rcd", "t_rp", "t_wr"});
        if (const RawEntry* e = require(s, "dram", "dq"))
            to_u32(*e, "dram.dq", out.dq);
        if (const RawEntry* e = require(s, "dram", "bl"))
            to_u32(*e, "dram.bl", out.bl);
        if (const RawEntry* e = require(s, "dram", "f_mem"))
            to_real(*e, "dram.f_mem", out.f_mem, true);
        if (const RawEntry* e = require(s, "dram", "t_rcd"))
            to_real(*e, "dram.t_rcd", out.t_rcd, true);
        if (const RawEntry* e = require(s, "dram", "t_rp"))
            to_real(*e, "dram.t_rp", out.t_rp, true);
        if (const RawEntry* e = require(s, "dram", "t_wr"))
            to_real(*e, "dram.t_wr", out.t_wr, true);
        if (out.dq && out.bl &&
            !is_power_of_two(std::uint64_t(out.dq) * out.bl)) {
            error(ConfigError::Code::BadValue, "dram",
                  "dq*bl (minimum transaction) must be a power of two", s.line, 1);
        }
    }

    void apply_kernel(KernelDefaults& out) {
        const RawSection& s = doc_.kernel;
        reject_unknown(s, "kernel", {"name", "delta", "f"});
        if (const RawEntry* e = require(s, "kernel", "name"))
            to_string_value(*e, "kernel.name", out.name);
        if (const RawEntry* e = find(s, "delta"))
            to_u32(*e, "kernel.delta", out.delta);
        if (const RawEntry* e = find(s, "f"))
            to_u32(*e, "kernel.f", out.f);
    }

    LsuConfig apply_lsu(const RawSection& s, std::size_t index,
                        const KernelDefaults& defaults) {
        const std::string name = "lsu[" + std::to_string(index) + "]";
        LsuConfig out;
        out.delta = defaults.delta;
        out.f = defaults.f;
        reject_unknown(s, name,
                       {"kind", "ls_width", "burst_cnt", "max_th", "ls_acc",
                        "ls_bytes", "delta", "f", "atomic_val_constant"});
        if (const RawEntry* e = require(s, name, "kind")) {
            std::string token;
            if (to_string_value(*e, name + ".kind", token)) {
                if (auto kind = lsu_kind_from_string(token))
                    out.kind = *kind;
                else
                    error(ConfigError::Code::BadValue, name + ".kind",
                          "unknown LSU kind `" + token + "`", e->line,
                          e->value_col);
            }
        }
        if (const RawEntry* e = require(s, name, "ls_width"))
            to_u32(*e, name + ".ls_width", out.ls_width);
        if (const RawEntry* e = require(s, name, "burst_cnt"))
            to_u32(*e, name + ".burst_cnt", out.burst_cnt, 0, kMaxBurstCntWidth);
        if (const RawEntry* e = require(s, name, "max_th"))
            to_u32(*e, name + ".max_th", out.max_th);
        if (const RawEntry* e = require(s, name, "ls_acc")) {
            std::uint64_t v = 0;
            if (to_u64(*e, name + ".ls_acc", v, 1,
                       std::numeric_limits<std::uint64_t>::max()))
                out.ls_acc = v;
        }
        if (const RawEntry* e = require(s, name, "ls_bytes"))
            to_u32(*e, name + ".ls_bytes", out.ls_bytes);
        if (const RawEntry* e = find(s, "delta"))
            to_u32(*e, name + ".delta", out.delta);
        if (const RawEntry* e = find(s, "f"))
            to_u32(*e, name + ".f", out.f);
        if (const RawEntry* e = find(s, "atomic_val_constant"))
            to_bool(*e, name + ".atomic_val_constant", out.atomic_val_constant);
        return out;
    }

    std::string_view text_;
    std::string_view file_;
    RawDocument doc_;
    std::vector<ConfigError> errors_;
    bool fatal_ = false;
};

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
    return std::string(buf, ptr);
}

}  // namespace

ParseResult parse_config(std::string_view text, std::string_view file_label) {
    return Parser(text, file_label).run();
}

std::string serialize_config(const KernelConfig& cfg) {
    std::ostringstream os;
    os << "schema_version = " << cfg.schema_version << "\n\n";
    os << "[dram]\n";
    os << "dq = " << cfg.dram.dq << "\n";
    os << "bl = " << cfg.dram.bl << "\n";
    os << "f_mem = " << format_real(cfg.dram.f_mem) << "\n";
    os << "t_rcd = " << format_real(cfg.dram.t_rcd) << "\n";
    os << "t_rp = " << format_real(cfg.dram.t_rp) << "\n";
    os << "t_wr = " << format_real(cfg.dram.t_wr) << "\n\n";
    os << "[kernel]\n";
    os << "name = \"" << cfg.kernel.name << "\"\n";
    os << "delta = " << cfg.kernel.delta << "\n";
    os << "f = " << cfg.kernel.f << "\n";
    for (const LsuConfig& lsu : cfg.lsus) {
        os << "\n[[lsu]]\n";
        os << "kind = \"" << to_string(lsu.kind) << "\"\n";
        os << "ls_width = " << lsu.ls_width << "\n";
        os << "burst_cnt = " << lsu.burst_cnt << "\n";
        os << "max_th = " << lsu.max_th << "\n";
        os << "ls_acc = " << lsu.ls_acc << "\n";
        os << "ls_bytes = " << lsu.ls_bytes << "\n";
        os << "delta = " << lsu.delta << "\n";
        os << "f = " << lsu.f << "\n";
        os << "atomic_val_constant = "
           << (lsu.atomic_val_constant ? "true" : "false") << "\n";
    }
    return os.str();
}

BuiltKernel build_kernel(const KernelConfig& cfg, const RtlParamExtract* rtl) {
    std::optional<std::uint32_t> burst_cnt_override;
    std::optional<std::uint32_t> max_th_override;
    if (rtl) {
        if (!rtl->conflicts.empty())
            throw RtlConflictError(rtl->conflicts);
        if (auto it = rtl->values.find("BURSTCOUNT_WIDTH"); it != rtl->values.end()) {
            if (it->second < 0)
                throw std::invalid_argument("BURSTCOUNT_WIDTH is negative");
            burst_cnt_override = std::uint32_t(it->second);
        }
        if (auto it = rtl->values.find("MAX_THREADS"); it != rtl->values.end()) {
            if (it->second < 0)
                throw std::invalid_argument("MAX_THREADS is negative");
            max_th_override = std::uint32_t(it->second);
        }
    }

    BuiltKernel out;
    out.kernel.name = cfg.kernel.name;
    for (const LsuConfig& lsu : cfg.lsus) {
        LsuInstance inst;
        inst.desc.kind = lsu.kind;
        inst.desc.ls_width = lsu.ls_width;
        inst.desc.burst_cnt = burst_cnt_override.value_or(lsu.burst_cnt);
        inst.desc.max_th = max_th_override.value_or(lsu.max_th);
        inst.profile.ls_acc = lsu.ls_acc;
        inst.profile.ls_bytes = lsu.ls_bytes;
        inst.profile.delta = lsu.delta;
        inst.profile.f = lsu.f;
        inst.profile.atomic_val_constant = lsu.atomic_val_constant;
        out.kernel.lsus.push_back(inst);
    }

    if (auto violations = validate_kernel(out.kernel); !violations.empty())
        throw InvalidKernelError(std::move(violations));

    out.dram = DramSpec(cfg.dram.dq, cfg.dram.bl, cfg.dram.f_mem, cfg.dram.t_rcd,
                        cfg.dram.t_rp, cfg.dram.t_wr);
    return out;
}

}  // namespace gmiperf
