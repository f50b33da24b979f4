#include "gmiperf/report.hpp"

#include <charconv>
#include <cstdio>
#include <iomanip>

#include <json.hpp>

namespace gmiperf {

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
    return std::string(buf, ptr);
}

std::string format_eng_time(double seconds) {
    const char* unit = "s";
    double scaled = seconds;
    if (seconds == 0.0) {
        return "0 s";
    } else if (seconds < 1e-6) {
        unit = "ns";
        scaled = seconds * 1e9;
    } else if (seconds < 1e-3) {
        unit = "us";
        scaled = seconds * 1e6;
    } else if (seconds < 1.0) {
        unit = "ms";
        scaled = seconds * 1e3;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5g %s", scaled, unit);
    return buf;
}

void print_estimate_table(std::ostream& os, const KernelModel& kernel,
                          const EstimateReport& rep) {
    os << "kernel: " << kernel.name << "\n";
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.2f", rep.occupancy_ratio);
    os << "boundedness: " << to_string(rep.boundedness) << " (ratio " << ratio
       << ")\n";
    if (rep.boundedness == Boundedness::ComputeBound) {
        os << "no time estimate: compute-bound kernels need a kernel-pipeline "
              "model\n";
        return;
    }
    os << std::left << std::setw(4) << "lsu" << std::setw(29) << "kind"
       << std::setw(7) << "delta" << std::setw(12) << "burst" << std::setw(13)
       << "t_ideal" << std::setw(13) << "t_ovh" << "weighted\n";
    for (std::size_t i = 0; i < rep.per_lsu.size(); ++i) {
        const LsuEstimate& e = rep.per_lsu[i];
        char burst[32];
        std::snprintf(burst, sizeof burst, "%.6g", e.burst_size);
        os << std::left << std::setw(4) << i << std::setw(29)
           << to_string(kernel.lsus[i].desc.kind) << std::setw(7)
           << kernel.lsus[i].profile.delta << std::setw(12) << burst
           << std::setw(13) << format_eng_time(e.t_ideal) << std::setw(13)
           << format_eng_time(e.t_ovh) << format_eng_time(e.weighted_time)
           << "\n";
    }
    os << "t_exe = " << format_eng_time(*rep.t_exe) << "\n";
    char bw[32];
    std::snprintf(bw, sizeof bw, "%.4f", *rep.effective_bandwidth / 1e9);
    os << "effective bandwidth = " << bw << " GB/s\n";
}

void write_estimate_csv(std::ostream& os, const KernelModel& kernel,
                        const EstimateReport& rep) {
    os << "kernel,boundedness,occupancy_ratio,t_ideal_total,t_ovh_total,t_exe,"
          "effective_bandwidth\n";
    os << kernel.name << "," << to_string(rep.boundedness) << ","
       << format_double(rep.occupancy_ratio) << ",";
    if (rep.t_exe) {
        double t_ideal_total = 0.0, t_ovh_total = 0.0;
        for (std::size_t i = 0; i < rep.per_lsu.size(); ++i) {
            const double delta = double(kernel.lsus[i].profile.delta);
            t_ideal_total += delta * rep.per_lsu[i].t_ideal;
            t_ovh_total += delta * rep.per_lsu[i].t_ovh;
        }
        os << format_double(t_ideal_total) << "," << format_double(t_ovh_total)
           << "," << format_double(*rep.t_exe) << ","
           << format_double(*rep.effective_bandwidth);
    } else {
        os << ",,,";
    }
    os << "\n";
}

std::string estimate_to_json(const KernelModel& kernel,
                             const EstimateReport& rep) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kernel"] = kernel.name;
    j["boundedness"] = to_string(rep.boundedness);
    j["occupancy_ratio"] = rep.occupancy_ratio;
    j["lsus"] = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.per_lsu.size(); ++i) {
        const LsuEstimate& e = rep.per_lsu[i];
        j["lsus"].push_back({
            {"index", i},
            {"kind", to_string(kernel.lsus[i].desc.kind)},
            {"delta", kernel.lsus[i].profile.delta},
            {"f", kernel.lsus[i].profile.f},
            {"k_lsu", e.k_lsu},
            {"burst_size", e.burst_size},
            {"t_ideal", e.t_ideal},
            {"t_ovh", e.t_ovh},
            {"weighted_time", e.weighted_time},
        });
    }
    if (rep.t_exe) {
        j["t_exe"] = *rep.t_exe;
        j["effective_bandwidth"] = *rep.effective_bandwidth;
    } else {
        j["t_exe"] = nullptr;
        j["effective_bandwidth"] = nullptr;
    }
    return j.dump(2) + "\n";
}

}  // namespace gmiperf
