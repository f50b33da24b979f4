#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <vector>

#include "support/run_cmd.hpp"

using gmiperf::testsupport::cli_path;
using gmiperf::testsupport::config_dir;
using gmiperf::testsupport::run_cmd;
using gmiperf::testsupport::testdata_dir;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty())
            lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(line);
    while (std::getline(is, item, ','))
        out.push_back(item);
    if (!line.empty() && line.back() == ',')
        out.push_back("");
    return out;
}

}  // namespace

TEST_CASE("estimate prints the vector_add table") {
    const auto res = run_cmd(cli_path() + " estimate --config " + config_dir() +
                             "/vector_add.cfg");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("MemoryBound") != std::string::npos);
    CHECK(res.output.find("t_exe = 1.1744 ms") != std::string::npos);
}

TEST_CASE("estimate reports compute-bound kernels with exit code 2") {
    const auto res = run_cmd(cli_path() + " estimate --config " + config_dir() +
                             "/compute_bound.cfg");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("ComputeBound (ratio 0.50)") != std::string::npos);
    CHECK(res.output.find("t_exe =") == std::string::npos);
}

TEST_CASE("estimate fails cleanly on a missing file") {
    const auto res = run_cmd(cli_path() + " estimate --config /no/such/file.cfg");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("/no/such/file.cfg") != std::string::npos);
}

TEST_CASE("estimate emits parseable json") {
    const auto res = run_cmd(cli_path() + " estimate --format json --config " +
                             config_dir() + "/vector_add.cfg");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"t_exe\"") != std::string::npos);
    CHECK(res.output.find("\"boundedness\": \"MemoryBound\"") != std::string::npos);
}

TEST_CASE("estimate accepts RTL overrides") {
    const auto res = run_cmd(cli_path() + " estimate --format csv --config " +
                             config_dir() + "/vector_add.cfg --rtl " +
                             testdata_dir() + "/sample_lsu.v");
    CHECK(res.exit_code == 0);
    // BURSTCOUNT_WIDTH=5 doubles the burst, halving the row-miss overhead
    const auto lines = lines_of(res.output);
    REQUIRE(lines.size() == 2);
    const auto cols = split_csv(lines[1]);
    const double t_ovh_total = std::strtod(cols[4].c_str(), nullptr);
    const double expect = 3.0 * (4194304.0 / 2048.0) * 27e-9;
    CHECK(t_ovh_total == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("delta sweep emits the documented CSV schema") {
    const auto res = run_cmd(cli_path() + " sweep --axis delta --values 1,2,3,4" +
                             " --config " + config_dir() + "/vector_add.cfg");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] ==
          "axis,value,boundedness,t_ideal_total,t_ovh_total,t_exe,"
          "effective_bandwidth,t_exe_norm");
    const double base = std::strtod(split_csv(lines[1])[5].c_str(), nullptr);
    for (int v = 1; v <= 4; ++v) {
        const auto cols = split_csv(lines[std::size_t(v)]);
        REQUIRE(cols.size() == 8);
        CHECK(cols[0] == "delta");
        CHECK(cols[1] == std::to_string(v));
        CHECK(cols[2] == "MemoryBound");
        const double t_exe = std::strtod(cols[5].c_str(), nullptr);
        CHECK(t_exe == doctest::Approx(v * base).epsilon(1e-9));
        const double norm = std::strtod(cols[7].c_str(), nullptr);
        CHECK(norm == doctest::Approx(double(v)).epsilon(1e-9));
    }
}

TEST_CASE("simd sweep flips boundedness exactly once") {
    const auto res = run_cmd(cli_path() +
                             " sweep --axis simd --values 1,2,4,8,16,32 --config " +
                             config_dir() + "/compute_bound.cfg");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    REQUIRE(lines.size() == 7);
    int flips = 0;
    std::string prev;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string b = split_csv(lines[i])[2];
        if (!prev.empty() && b != prev)
            ++flips;
        prev = b;
    }
    CHECK(flips == 1);
    CHECK(split_csv(lines[1])[2] == "ComputeBound");
    CHECK(split_csv(lines[1])[5] == "");  // empty t_exe for compute-bound points
    CHECK(split_csv(lines[6])[2] == "MemoryBound");
}

TEST_CASE("n_lsu sweep turns on the row-miss overhead at two LSUs") {
    const auto res = run_cmd(cli_path() + " sweep --axis n_lsu --values 1,2" +
                             " --config " + config_dir() + "/vector_add_1lsu.cfg");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    REQUIRE(lines.size() == 3);
    CHECK(std::strtod(split_csv(lines[1])[4].c_str(), nullptr) == 0.0);
    CHECK(std::strtod(split_csv(lines[2])[4].c_str(), nullptr) > 0.0);
}

TEST_CASE("extract lists parameters with file:line") {
    const auto res =
        run_cmd(cli_path() + " extract --rtl " + testdata_dir() + "/sample_lsu.v");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].find("BURSTCOUNT_WIDTH 5") == 0);
    CHECK(lines[0].find("sample_lsu.v:6") != std::string::npos);
    CHECK(lines[1].find("MAX_THREADS 64") == 0);
    CHECK(lines[1].find("sample_lsu.v:7") != std::string::npos);
}

TEST_CASE("extract with no matches exits 0 with an empty listing") {
    const auto res =
        run_cmd(cli_path() + " extract --rtl " + testdata_dir() + "/conflict_a.v" +
                " --rtl /dev/null");
    // conflict_a.v alone declares MAX_THREADS once; use /dev/null only
    const auto empty = run_cmd(cli_path() + " extract --rtl /dev/null");
    CHECK(empty.exit_code == 0);
    CHECK(empty.output.empty());
    CHECK(res.exit_code == 0);
}

TEST_CASE("extract flags conflicting declarations with both locations") {
    const auto res =
        run_cmd(cli_path() + " extract --rtl " + testdata_dir() + "/conflict_a.v" +
                " --rtl " + testdata_dir() + "/conflict_b.v");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("conflict_a.v:2") != std::string::npos);
    CHECK(res.output.find("conflict_b.v:2") != std::string::npos);
}

TEST_CASE("validate reports model vs oracle error") {
    const auto res = run_cmd(cli_path() + " validate --seed 7 --config " +
                             config_dir() + "/vector_add_1lsu.cfg");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("relative error") != std::string::npos);
}

TEST_CASE("validate is not applicable to compute-bound kernels") {
    const auto res = run_cmd(cli_path() + " validate --config " + config_dir() +
                             "/compute_bound.cfg");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("not applicable") != std::string::npos);
}

TEST_CASE("sweep rejects non-increasing values") {
    const auto res = run_cmd(cli_path() + " sweep --axis delta --values 2,2" +
                             " --config " + config_dir() + "/vector_add.cfg");
    CHECK(res.exit_code == 1);
}

TEST_CASE("estimate --out writes the file instead of stdout") {
    const std::string out = "/tmp/gmiperf_cli_test.csv";
    std::remove(out.c_str());
    const auto res = run_cmd(cli_path() + " estimate --format csv --out " + out +
                             " --config " + config_dir() + "/vector_add.cfg");
    CHECK(res.exit_code == 0);
    CHECK(res.output.empty());
    const auto cat = run_cmd("cat " + out);
    CHECK(cat.output.find("vector_add,MemoryBound") != std::string::npos);
    std::remove(out.c_str());
}
