#include <doctest.h>

#include "gmiperf/estimator.hpp"
#include "support/kernel_gen.hpp"

using namespace gmiperf;
using testgen::Rng;

namespace {

constexpr int kTrials = 1200;

}  // namespace

TEST_CASE("t_exe is exactly the sum of weighted LSU times") {
    Rng rng(0xadd1);
    for (int trial = 0; trial < kTrials; ++trial) {
        const DramSpec d = testgen::random_dram(rng);
        const KernelModel k = testgen::random_kernel(rng, d);
        const EstimateReport rep = estimate(k, d);
        if (!rep.t_exe)
            continue;
        double sum = 0.0;
        for (const LsuEstimate& e : rep.per_lsu) {
            CHECK(e.weighted_time ==
                  double(k.lsus[&e - rep.per_lsu.data()].profile.delta) *
                      (e.t_ideal + e.t_ovh));
            sum += e.weighted_time;
        }
        CHECK(*rep.t_exe == sum);
    }
}

TEST_CASE("t_exe never decreases with the stride of an aligned kernel") {
    Rng rng(0x57ad);
    int seen = 0;
    while (seen < kTrials) {
        const DramSpec d = testgen::random_dram(rng);
        KernelModel k = testgen::random_kernel(rng, d, /*allow_atomic=*/false);
        for (auto& inst : k.lsus)
            inst.desc.kind = LsuKind::BurstCoalescedAligned;
        const EstimateReport base = estimate(k, d);
        if (!base.t_exe)
            continue;
        ++seen;
        double prev = *base.t_exe;
        for (std::uint32_t bump = 1; bump <= 3; ++bump) {
            KernelModel k2 = k;
            for (auto& inst : k2.lsus)
                inst.profile.delta += bump;
            const EstimateReport rep = estimate(k2, d);
            REQUIRE(rep.t_exe.has_value());  // occupancy grows with stride
            CHECK(*rep.t_exe >= prev);
            prev = *rep.t_exe;
        }
    }
}

TEST_CASE("doubling f_mem exactly halves every t_ideal") {
    Rng rng(0xf3e9);
    for (int trial = 0; trial < kTrials; ++trial) {
        const DramSpec d = testgen::random_dram(rng);
        const KernelModel k = testgen::random_kernel(rng, d);
        const DramSpec d2(d.dq, d.bl, 2.0 * d.f_mem, d.t_rcd, d.t_rp, d.t_wr);
        const EstimateReport a = estimate(k, d);
        const EstimateReport b = estimate(k, d2);
        if (!a.t_exe)
            continue;
        REQUIRE(b.t_exe.has_value());  // classification ignores f_mem
        REQUIRE(a.per_lsu.size() == b.per_lsu.size());
        for (std::size_t i = 0; i < a.per_lsu.size(); ++i)
            CHECK(b.per_lsu[i].t_ideal == a.per_lsu[i].t_ideal / 2.0);
    }
}

TEST_CASE("write-ack weighs at least as much as aligned on equal profiles") {
    Rng rng(0xac2d);
    int seen = 0;
    while (seen < kTrials) {
        const DramSpec d = testgen::random_dram(rng);
        LsuInstance a = testgen::random_lsu(rng, d, /*allow_atomic=*/false);
        a.desc.kind = LsuKind::BurstCoalescedAligned;
        a.profile.delta = 1;  // equal weighting on both sides
        LsuInstance w = a;
        w.desc.kind = LsuKind::BurstCoalescedWriteAck;

        KernelModel k{"pair", {a, w}};
        EstimateReport rep;
        try {
            rep = estimate(k, d);
        } catch (const InvalidKernelError&) {
            continue;
        }
        if (!rep.t_exe)
            continue;
        ++seen;
        CHECK(rep.per_lsu[1].weighted_time >= rep.per_lsu[0].weighted_time);
    }
}

TEST_CASE("classify and estimate are pure functions") {
    Rng rng(0x9d1e);
    for (int trial = 0; trial < kTrials; ++trial) {
        const DramSpec d = testgen::random_dram(rng);
        const KernelModel k = testgen::random_kernel(rng, d);
        const auto c1 = classify(k, d);
        const auto c2 = classify(k, d);
        CHECK(c1.first == c2.first);
        CHECK(c1.second == c2.second);

        const EstimateReport r1 = estimate(k, d);
        const EstimateReport r2 = estimate(k, d);
        CHECK(r1.boundedness == r2.boundedness);
        CHECK(r1.occupancy_ratio == r2.occupancy_ratio);
        CHECK(r1.t_exe == r2.t_exe);
        REQUIRE(r1.per_lsu.size() == r2.per_lsu.size());
        for (std::size_t i = 0; i < r1.per_lsu.size(); ++i) {
            CHECK(r1.per_lsu[i].t_ideal == r2.per_lsu[i].t_ideal);
            CHECK(r1.per_lsu[i].t_ovh == r2.per_lsu[i].t_ovh);
            CHECK(r1.per_lsu[i].weighted_time == r2.per_lsu[i].weighted_time);
        }
    }
}

TEST_CASE("the memory-bound boundary sits exactly at ratio 1") {
    Rng rng(0xb0d1);
    for (int trial = 0; trial < kTrials; ++trial) {
        const DramSpec d = testgen::random_dram(rng);
        const std::uint32_t txn = std::uint32_t(min_transaction_bytes(d));

        LsuInstance inst;
        inst.desc = {LsuKind::BurstCoalescedAligned, txn, 4, 64};
        inst.profile = {1024, 4, 1, 1, false};
        KernelModel k{"boundary", {inst}};

        auto [at, r_at] = classify(k, d);
        CHECK(r_at == 1.0);
        CHECK(at == Boundedness::MemoryBound);

        if (txn > 1) {
            k.lsus[0].desc.ls_width = txn - 1;
            auto [below, r_below] = classify(k, d);
            CHECK(r_below < 1.0);
            CHECK(below == Boundedness::ComputeBound);
        }

        // random multi-LSU kernels classify consistently with their ratio
        const KernelModel rk = testgen::random_kernel(rng, d);
        auto [b, ratio] = classify(rk, d);
        CHECK((b == Boundedness::MemoryBound) == (ratio >= 1.0));
    }
}

TEST_CASE("t_exe is bounded below by the weighted ideal time") {
    Rng rng(0xf100);
    for (int trial = 0; trial < kTrials; ++trial) {
        const DramSpec d = testgen::random_dram(rng);
        const KernelModel k = testgen::random_kernel(rng, d);
        const EstimateReport rep = estimate(k, d);
        if (!rep.t_exe)
            continue;
        double floor = 0.0;
        for (std::size_t i = 0; i < rep.per_lsu.size(); ++i)
            floor += double(k.lsus[i].profile.delta) * rep.per_lsu[i].t_ideal;
        CHECK(*rep.t_exe >= floor);
        CHECK(rep.per_lsu.size() == k.lsus.size());
        for (const LsuEstimate& e : rep.per_lsu) {
            CHECK(e.burst_size > 0.0);
            CHECK(e.burst_size <=
                  std::ldexp(double(min_transaction_bytes(d)),
                             int(k.lsus[&e - rep.per_lsu.data()].desc.burst_cnt)));
        }
    }
}
