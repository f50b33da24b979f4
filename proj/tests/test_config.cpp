#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmiperf/config.hpp"
#include "gmiperf/estimator.hpp"
#include "gmiperf/rtl_scan.hpp"

using namespace gmiperf;

namespace {

const char* kMinimal = R"(schema_version = 1

[dram]
dq = 8
bl = 8
f_mem = 933.3e6
t_rcd = 13.5e-9
t_rp = 13.5e-9
t_wr = 15e-9

[kernel]
name = "minimal"

[[lsu]]
kind = "burst_coalesced_aligned"
ls_width = 64
burst_cnt = 4
max_th = 64
ls_acc = 1048576
ls_bytes = 4
)";

const ConfigError* find_error(const ParseResult& r, ConfigError::Code code,
                              const std::string& path) {
    for (const ConfigError& e : r.errors)
        if (e.code == code && e.path == path)
            return &e;
    return nullptr;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("minimal document parses with defaults") {
    const ParseResult r = parse_config(kMinimal);
    REQUIRE(r.ok());
    const KernelConfig& cfg = *r.config;
    CHECK(cfg.kernel.name == "minimal");
    CHECK(cfg.kernel.delta == 1);
    CHECK(cfg.kernel.f == 1);
    REQUIRE(cfg.lsus.size() == 1);
    CHECK(cfg.lsus[0].delta == 1);
    CHECK(cfg.lsus[0].f == 1);
    CHECK(cfg.lsus[0].atomic_val_constant == false);
    CHECK(cfg.lsus[0].ls_acc == 1048576);
}

TEST_CASE("kernel-level delta and f become per-LSU defaults") {
    std::string text = kMinimal;
    text.replace(text.find("name = \"minimal\""), 16,
                 "name = \"minimal\"\ndelta = 3\nf = 16");
    const ParseResult r = parse_config(text);
    REQUIRE(r.ok());
    CHECK(r.config->lsus[0].delta == 3);
    CHECK(r.config->lsus[0].f == 16);
}

TEST_CASE("missing keys are reported with their path") {
    std::string text = kMinimal;
    const auto pos = text.find("f_mem = 933.3e6\n");
    text.erase(pos, 16);
    const ParseResult r = parse_config(text, "x.cfg");
    REQUIRE_FALSE(r.ok());
    const ConfigError* e =
        find_error(r, ConfigError::Code::MissingKey, "dram.f_mem");
    REQUIRE(e != nullptr);
    CHECK(e->file == "x.cfg");
    CHECK(e->format().find("x.cfg") == 0);
}

TEST_CASE("unknown keys are rejected with position") {
    std::string text = kMinimal;
    text += "voltage = 3\n";  // appended to the last [[lsu]] block
    const ParseResult r = parse_config(text);
    REQUIRE_FALSE(r.ok());
    const ConfigError* e =
        find_error(r, ConfigError::Code::UnknownKey, "lsu[0].voltage");
    REQUIRE(e != nullptr);
    CHECK(e->line > 0);
    CHECK(e->col > 0);
}

TEST_CASE("type mismatches carry line and column") {
    std::string text = kMinimal;
    text.replace(text.find("dq = 8"), 6, "dq = x8");
    const ParseResult r = parse_config(text);
    REQUIRE_FALSE(r.ok());
    const ConfigError* e = find_error(r, ConfigError::Code::TypeMismatch, "dram.dq");
    REQUIRE(e != nullptr);
    CHECK(e->line == 4);
    CHECK(e->col == 6);
}

TEST_CASE("cache kind parses; rejection happens downstream") {
    std::string text = kMinimal;
    text.replace(text.find("\"burst_coalesced_aligned\""), 25, "\"cache\"");
    const ParseResult r = parse_config(text);
    REQUIRE(r.ok());
    CHECK(r.config->lsus[0].kind == LsuKind::BurstCoalescedCache);
    const BuiltKernel built = build_kernel(*r.config);
    CHECK_THROWS_AS(estimate(built.kernel, built.dram), UnsupportedLsuError);
}

TEST_CASE("schema_version is required and pinned") {
    std::string text = kMinimal;
    text.erase(0, text.find('\n') + 1);
    CHECK(find_error(parse_config(text), ConfigError::Code::MissingKey,
                     "schema_version") != nullptr);

    std::string v2 = kMinimal;
    v2.replace(v2.find("schema_version = 1"), 18, "schema_version = 2");
    CHECK(find_error(parse_config(v2), ConfigError::Code::BadValue,
                     "schema_version") != nullptr);
}

TEST_CASE("duplicate keys and malformed lines are flagged") {
    std::string text = kMinimal;
    text.replace(text.find("bl = 8"), 6, "bl = 8\ndq = 4");
    CHECK(find_error(parse_config(text), ConfigError::Code::DuplicateKey,
                     "dram.dq") != nullptr);

    std::string bad = kMinimal;
    bad.replace(bad.find("bl = 8"), 6, "bl 8");
    CHECK_FALSE(parse_config(bad).ok());
}

TEST_CASE("zero and out-of-range values are rejected at parse") {
    std::string text = kMinimal;
    text.replace(text.find("ls_acc = 1048576"), 16, "ls_acc = 0");
    CHECK(find_error(parse_config(text), ConfigError::Code::BadValue,
                     "lsu[0].ls_acc") != nullptr);

    std::string bc = kMinimal;
    bc.replace(bc.find("burst_cnt = 4"), 13, "burst_cnt = 17");
    CHECK(find_error(parse_config(bc), ConfigError::Code::BadValue,
                     "lsu[0].burst_cnt") != nullptr);

    std::string pow2 = kMinimal;
    pow2.replace(pow2.find("dq = 8"), 6, "dq = 6");
    CHECK(find_error(parse_config(pow2), ConfigError::Code::BadValue, "dram") !=
          nullptr);
}

TEST_CASE("serialize/parse is a fixpoint") {
    const ParseResult first = parse_config(kMinimal);
    REQUIRE(first.ok());
    const std::string text = serialize_config(*first.config);
    const ParseResult second = parse_config(text);
    REQUIRE(second.ok());
    CHECK(*first.config == *second.config);
    CHECK(serialize_config(*second.config) == text);
}

TEST_CASE("bundled configs all round-trip") {
    const std::filesystem::path dir = GMIPERF_CONFIG_DIR;
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".cfg")
            continue;
        ++seen;
        INFO("config: ", entry.path().string());
        const ParseResult first =
            parse_config(read_file(entry.path()), entry.path().string());
        REQUIRE(first.ok());
        const ParseResult second = parse_config(serialize_config(*first.config));
        REQUIRE(second.ok());
        CHECK(*first.config == *second.config);
        CHECK_NOTHROW(build_kernel(*first.config));
    }
    CHECK(seen >= 6);
}

TEST_CASE("build_kernel applies RTL overrides") {
    const ParseResult r = parse_config(kMinimal);
    REQUIRE(r.ok());

    RtlParamExtract rtl;
    rtl.values["BURSTCOUNT_WIDTH"] = 5;
    rtl.values["MAX_THREADS"] = 32;
    const BuiltKernel built = build_kernel(*r.config, &rtl);
    CHECK(built.kernel.lsus[0].desc.burst_cnt == 5);
    CHECK(built.kernel.lsus[0].desc.max_th == 32);

    const BuiltKernel plain = build_kernel(*r.config);
    CHECK(plain.kernel.lsus[0].desc.burst_cnt == 4);
    CHECK(plain.kernel.lsus[0].desc.max_th == 64);
    CHECK(plain.kernel.name == "minimal");
}

TEST_CASE("build_kernel surfaces validation violations") {
    std::string text = kMinimal;
    text.replace(text.find("\"burst_coalesced_aligned\""), 25,
                 "\"atomic_pipelined\"");
    text += "delta = 2\n";
    const ParseResult r = parse_config(text);
    REQUIRE(r.ok());
    CHECK_THROWS_AS(build_kernel(*r.config), InvalidKernelError);
}

TEST_CASE("build_kernel refuses conflicted RTL extracts") {
    const ParseResult r = parse_config(kMinimal);
    REQUIRE(r.ok());
    RtlParamExtract rtl;
    rtl.hits.push_back({"MAX_THREADS", 64, "a.v", 1});
    rtl.hits.push_back({"MAX_THREADS", 32, "b.v", 1});
    rtl.conflicts.push_back({"MAX_THREADS", rtl.hits});
    CHECK_THROWS_AS(build_kernel(*r.config, &rtl), RtlConflictError);
}
