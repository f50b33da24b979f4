#include "gmiperf/rtl_scan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace gmiperf {

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

void skip_space(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
        ++pos;
}

std::string_view read_ident(std::string_view s, std::size_t& pos) {
    if (pos >= s.size() || !is_ident_start(s[pos]))
        return {};
    const std::size_t start = pos;
    while (pos < s.size() && is_ident_char(s[pos]))
        ++pos;
    return s.substr(start, pos - start);
}

// Verilog integer literal: plain decimal, or [size]'[dhbo]digits.
// Underscore separators tolerated. Returns false when nothing numeric here.
bool read_int_literal(std::string_view s, std::size_t& pos, std::int64_t& out) {
    std::size_t p = pos;
    std::uint64_t size_or_value = 0;
    bool have_digits = false;
    while (p < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '_')) {
        if (s[p] != '_') {
            size_or_value = size_or_value * 10 + std::uint64_t(s[p] - '0');
            have_digits = true;
        }
        ++p;
    }
    std::size_t q = p;
    skip_space(s, q);
    if (q < s.size() && s[q] == '\'') {
        ++q;
        skip_space(s, q);
        if (q >= s.size())
            return false;
        const char base_ch = char(std::tolower(static_cast<unsigned char>(s[q])));
        int base = 0;
        switch (base_ch) {
        case 'd': base = 10; break;
        case 'h': base = 16; break;
        case 'b': base = 2; break;
        case 'o': base = 8; break;
        default: return false;
        }
        ++q;
        skip_space(s, q);
        std::uint64_t value = 0;
        bool any = false;
        while (q < s.size()) {
            const char c = s[q];
            if (c == '_') {
                ++q;
                continue;
            }
            int digit;
            if (std::isdigit(static_cast<unsigned char>(c)))
                digit = c - '0';
            else if (std::isxdigit(static_cast<unsigned char>(c)))
                digit = 10 + (std::tolower(static_cast<unsigned char>(c)) - 'a');
            else
                break;
            if (digit >= base)
                return false;
            value = value * std::uint64_t(base) + std::uint64_t(digit);
            any = true;
            ++q;
        }
        if (!any)
            return false;
        out = std::int64_t(value);
        pos = q;
        return true;
    }
    if (!have_digits)
        return false;
    out = std::int64_t(size_or_value);
    pos = p;
    return true;
}

// Skips `integer`, `signed`, `unsigned` and `[msb:lsb]` qualifiers after the
// parameter keyword.
void skip_qualifiers(std::string_view s, std::size_t& pos) {
    for (;;) {
        skip_space(s, pos);
        if (pos < s.size() && s[pos] == '[') {
            const std::size_t close = s.find(']', pos);
            if (close == std::string_view::npos)
                return;
            pos = close + 1;
            continue;
        }
        const std::size_t save = pos;
        const std::string_view word = read_ident(s, pos);
        if (word == "integer" || word == "signed" || word == "unsigned" ||
            word == "int")
            continue;
        pos = save;
        return;
    }
}

void recompute_conflicts(RtlParamExtract& ex) {
    ex.values.clear();
    ex.conflicts.clear();
    std::map<std::string, std::vector<const RtlParamHit*>> by_name;
    for (const RtlParamHit& h : ex.hits)
        by_name[h.name].push_back(&h);
    for (auto& [name, hits] : by_name) {
        std::set<std::int64_t> distinct;
        for (const RtlParamHit* h : hits)
            distinct.insert(h->value);
        if (distinct.size() == 1) {
            ex.values[name] = *distinct.begin();
        } else {
            RtlConflict c;
            c.name = name;
            for (const RtlParamHit* h : hits)
                c.hits.push_back(*h);
            ex.conflicts.push_back(std::move(c));
        }
    }
}

}  // namespace

RtlParamExtract extract_rtl_params(std::string_view text,
                                   const std::vector<std::string>& names,
                                   std::string_view file_label) {
    RtlParamExtract ex;
    const std::set<std::string, std::less<>> wanted(names.begin(), names.end());

    std::size_t line_start = 0;
    int line_no = 0;
    while (line_start <= text.size()) {
        const std::size_t nl = text.find('\n', line_start);
        std::string_view line = text.substr(
            line_start, nl == std::string_view::npos ? text.size() - line_start
                                                     : nl - line_start);
        ++line_no;
        if (const std::size_t slashes = line.find("//");
            slashes != std::string_view::npos)
            line = line.substr(0, slashes);

        std::size_t pos = 0;
        while (pos < line.size()) {
            if (!is_ident_start(line[pos])) {
                ++pos;
                continue;
            }
            const std::string_view word = read_ident(line, pos);
            if (word != "parameter" && word != "localparam")
                continue;
            skip_qualifiers(line, pos);
            skip_space(line, pos);
            const std::string_view name = read_ident(line, pos);
            if (name.empty())
                continue;
            skip_space(line, pos);
            if (pos >= line.size() || line[pos] != '=')
                continue;
            ++pos;
            skip_space(line, pos);
            std::int64_t value = 0;
            if (!read_int_literal(line, pos, value))
                continue;
            if (wanted.count(name))
                ex.hits.push_back({std::string(name), value,
                                   std::string(file_label), line_no});
        }

        if (nl == std::string_view::npos)
            break;
        line_start = nl + 1;
    }

    recompute_conflicts(ex);
    return ex;
}

RtlParamExtract scan_rtl_files(std::vector<std::string> paths,
                               const std::vector<std::string>& names) {
    std::sort(paths.begin(), paths.end());
    RtlParamExtract merged;
    for (const std::string& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot read RTL file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        RtlParamExtract one = extract_rtl_params(buf.str(), names, path);
        merged.hits.insert(merged.hits.end(), one.hits.begin(), one.hits.end());
    }
    recompute_conflicts(merged);
    return merged;
}

std::string RtlConflict::describe() const {
    std::ostringstream os;
    os << "conflicting values for " << name << ":";
    for (const RtlParamHit& h : hits)
        os << "\n  " << h.name << " = " << h.value << " at " << h.file << ":"
           << h.line;
    return os.str();
}

namespace {

std::string join_conflicts(const std::vector<RtlConflict>& cs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i)
            os << "\n";
        os << cs[i].describe();
    }
    return os.str();
}

}  // namespace

RtlConflictError::RtlConflictError(const std::vector<RtlConflict>& conflicts)
    : std::runtime_error(join_conflicts(conflicts)) {}

const std::vector<std::string>& default_rtl_param_names() {
    static const std::vector<std::string> names = {"BURSTCOUNT_WIDTH",
                                                   "MAX_THREADS"};
    return names;
}

}  // namespace gmiperf
