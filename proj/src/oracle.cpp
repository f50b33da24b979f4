#include "gmiperf/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "gmiperf/estimator.hpp"

namespace gmiperf {

void RequestStream::append_strided(std::uint32_t lsu, std::uint64_t base,
                                   std::uint64_t count, std::uint32_t bytes,
                                   std::uint32_t stride) {
    requests.reserve(requests.size() + count);
    std::uint64_t addr = base;
    const std::uint64_t step = std::uint64_t(stride) * bytes;
    for (std::uint64_t i = 0; i < count; ++i) {
        requests.push_back({lsu, addr, bytes});
        addr += step;
    }
}

std::string RequestStream::to_trace() const {
    std::ostringstream os;
    for (const Request& r : requests)
        os << r.lsu << " " << r.addr << " " << r.len << "\n";
    return os.str();
}

RequestStream RequestStream::from_trace(std::string_view text) {
    RequestStream out;
    std::istringstream is{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        Request r;
        if (!(ls >> r.lsu >> r.addr >> r.len) || !(ls >> std::ws).eof())
            throw std::runtime_error("trace line " + std::to_string(line_no) +
                                     ": expected `lsu addr len`");
        out.requests.push_back(r);
    }
    return out;
}

SimConfig SimConfig::for_kernel(const KernelModel& k, const DramSpec& d) {
    SimConfig cfg;
    cfg.dram = d;
    const std::uint64_t txn = min_transaction_bytes(d);
    std::uint64_t page = txn;
    for (const LsuInstance& inst : k.lsus) {
        cfg.lsus.push_back({inst.desc.burst_cnt, inst.desc.max_th});
        page = std::max(page, (std::uint64_t(1) << inst.desc.burst_cnt) * txn);
    }
    cfg.page_bytes = page;
    return cfg;
}

namespace {

struct Burst {
    std::uint64_t addr = 0;
    std::uint64_t len = 0;
};

}  // namespace

SimResult simulate(const RequestStream& stream, const SimConfig& cfg) {
    const std::size_t n = cfg.lsus.size();
    if (n == 0)
        throw std::invalid_argument("simulate: config has no LSUs");
    if (!is_power_of_two(cfg.page_bytes))
        throw std::invalid_argument("simulate: page_bytes must be a power of two");
    if (const char* why = DramSpec::invalid_reason(cfg.dram))
        throw std::invalid_argument(why);

    const std::uint64_t txn = min_transaction_bytes(cfg.dram);
    const double bw = peak_bandwidth(cfg.dram);
    const double t_open = cfg.dram.t_rcd + cfg.dram.t_rp;

    // Phase 1: per-LSU coalescing.
    struct Pending {
        std::uint64_t addr = 0;
        std::uint64_t bytes = 0;
        std::uint32_t threads = 0;
        bool open = false;
    };
    std::vector<std::vector<Burst>> queues(n);
    std::vector<Pending> pending(n);
    auto flush = [&](std::size_t i) {
        if (pending[i].open) {
            queues[i].push_back({pending[i].addr, pending[i].bytes});
            pending[i].open = false;
        }
    };
    for (const Request& r : stream.requests) {
        if (r.lsu >= n)
            throw std::invalid_argument("simulate: request for unknown LSU " +
                                        std::to_string(r.lsu));
        if (r.len == 0)
            throw std::invalid_argument("simulate: zero-length request");
        const std::size_t i = r.lsu;
        const std::uint64_t limit = (std::uint64_t(1) << cfg.lsus[i].burst_cnt) * txn;
        Pending& p = pending[i];
        if (p.open && r.addr == p.addr + p.bytes) {
            p.bytes += r.len;
            p.threads += 1;
        } else {
            flush(i);
            p = {r.addr, r.len, 1, true};
        }
        if (p.bytes >= limit || p.threads >= cfg.lsus[i].max_th)
            flush(i);
    }
    for (std::size_t i = 0; i < n; ++i)
        flush(i);

    // Phase 2: round-robin drain through the single-row-buffer DRAM.
    SimResult res;
    res.per_lsu.resize(n);
    std::vector<std::size_t> next(n, 0);
    std::size_t remaining = 0;
    for (const auto& q : queues)
        remaining += q.size();

    double t = 0.0;
    bool row_open = false;
    std::uint64_t open_row = 0;
    bool have_seq = false;
    std::uint64_t seq_addr = 0;

    while (remaining > 0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (next[i] >= queues[i].size())
                continue;
            const Burst b = queues[i][next[i]++];
            --remaining;

            const std::uint64_t row = b.addr / cfg.page_bytes;
            if (row_open && row == open_row) {
                res.per_lsu[i].row_hits += 1;
            } else if (have_seq && b.addr == seq_addr) {
                res.per_lsu[i].row_opens_hidden += 1;
                row_open = true;
                open_row = row;
            } else {
                t += t_open;
                res.per_lsu[i].row_misses += 1;
                row_open = true;
                open_row = row;
            }

            const std::uint64_t bus = (b.len + txn - 1) / txn * txn;
            t += double(bus) / bw;
            have_seq = true;
            seq_addr = b.addr + b.len;

            res.per_lsu[i].bursts += 1;
            res.per_lsu[i].bytes_requested += b.len;
            res.per_lsu[i].bytes_on_bus += bus;
        }
    }

    for (const auto& pl : res.per_lsu) {
        res.bytes_requested += pl.bytes_requested;
        res.bytes_on_bus += pl.bytes_on_bus;
        res.bursts += pl.bursts;
    }
    res.total_time = t;
    return res;
}

RequestStream streams_for_kernel(const KernelModel& k, const DramSpec& d,
                                 std::uint64_t seed) {
    const SimConfig cfg = SimConfig::for_kernel(k, d);
    RequestStream stream;
    std::uint64_t base = 0;
    for (std::size_t i = 0; i < k.lsus.size(); ++i) {
        const LsuDescriptor& desc = k.lsus[i].desc;
        const AccessProfile& p = k.lsus[i].profile;
        std::uint64_t span = 0;
        switch (normalize_kind(desc.kind)) {
        case LsuKind::BurstCoalescedAligned:
        case LsuKind::BurstCoalescedNonAligned: {
            // the kernel presents ls_width bytes per request to the LSU, so
            // the coalescer's thread count advances at that granularity
            const std::uint64_t total = p.ls_acc * std::uint64_t(p.ls_bytes);
            const std::uint64_t count =
                (total + desc.ls_width - 1) / desc.ls_width;
            stream.append_strided(std::uint32_t(i), base, count, desc.ls_width,
                                  p.delta);
            span = count * std::uint64_t(p.delta) * desc.ls_width;
            break;
        }
        case LsuKind::BurstCoalescedWriteAck: {
            // data-dependent store pattern: random indices in a small window
            std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
            std::uniform_int_distribution<std::uint64_t> idx(0, 2047);
            stream.requests.reserve(stream.requests.size() + p.ls_acc);
            for (std::uint64_t j = 0; j < p.ls_acc; ++j)
                stream.requests.push_back(
                    {std::uint32_t(i), base + idx(rng) * p.ls_bytes, p.ls_bytes});
            span = 2048 * std::uint64_t(p.ls_bytes);
            break;
        }
        default:
            throw NotApplicableError(
                "lsu[" + std::to_string(i) +
                "]: only burst-coalesced LSUs have a stream generator");
        }
        // keep LSUs in disjoint row ranges
        const std::uint64_t pages = (span + 2 * cfg.page_bytes) / cfg.page_bytes;
        base += pages * cfg.page_bytes;
    }
    return stream;
}

CompareResult compare(const KernelModel& k, const DramSpec& d,
                      std::uint64_t seed) {
    for (std::size_t i = 0; i < k.lsus.size(); ++i) {
        if (normalize_kind(k.lsus[i].desc.kind) == LsuKind::AtomicPipelined)
            throw NotApplicableError(
                "lsu[" + std::to_string(i) +
                "]: atomic LSUs are outside the event simulator");
    }
    const EstimateReport rep = estimate(k, d);
    if (rep.boundedness == Boundedness::ComputeBound)
        throw NotApplicableError("kernel is compute bound; no time estimate to compare",
                                 /*compute_bound=*/true);

    CompareResult out;
    out.model_time = *rep.t_exe;
    out.sim = simulate(streams_for_kernel(k, d, seed), SimConfig::for_kernel(k, d));
    out.sim_time = out.sim.total_time;
    out.rel_error = std::abs(out.sim_time - out.model_time) / out.sim_time;
    return out;
}

}  // namespace gmiperf
