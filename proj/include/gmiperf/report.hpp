#pragma once

#include <ostream>
#include <string>

#include "gmiperf/estimator.hpp"
#include "gmiperf/gmi.hpp"

namespace gmiperf {

/// Shortest round-trip decimal form (for CSV/JSON; locale-free).
std::string format_double(double v);

/// Engineering-scaled time with 5 significant digits: "280.88 us".
std::string format_eng_time(double seconds);

/// Human-readable per-LSU table. Ends with the t_exe line for memory-bound
/// kernels.
void print_estimate_table(std::ostream& os, const KernelModel& kernel,
                          const EstimateReport& rep);

/// Single summary row (header + row). Times in seconds.
void write_estimate_csv(std::ostream& os, const KernelModel& kernel,
                        const EstimateReport& rep);

/// Full report as a JSON document (t_exe null when compute bound).
std::string estimate_to_json(const KernelModel& kernel, const EstimateReport& rep);

}  // namespace gmiperf
