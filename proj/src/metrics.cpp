#include "trustsas/sim/metrics.hpp"

#include <sstream>

namespace trustsas::sim {

std::string Metrics::to_csv() const {
  std::ostringstream out;
  out << "name,value\n";
  for (const auto& [name, v] : counters_) out << name << "," << v << "\n";
  for (const auto& [op, d] : durations_)
    out << "duration_s." << op << "," << d.total_s << "\n";
  return out.str();
}

}  // namespace trustsas::sim
