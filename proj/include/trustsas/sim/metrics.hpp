#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace trustsas::sim {

// flat counters plus per-operation simulated durations; everything the
// report tables are built from
class Metrics {
 public:
  void add(const std::string& name, double v = 1.0) { counters_[name] += v; }
  void set(const std::string& name, double v) { counters_[name] = v; }
  double get(const std::string& name) const {
    auto it = counters_.find(name);
    return it == counters_.end() ? 0.0 : it->second;
  }
  bool has(const std::string& name) const { return counters_.count(name) > 0; }

  // simulated duration samples per operation
  void duration(const std::string& op, double seconds) {
    auto& d = durations_[op];
    d.count += 1;
    d.total_s += seconds;
    if (d.count == 1 || seconds > d.max_s) d.max_s = seconds;
  }
  struct Dur {
    uint64_t count = 0;
    double total_s = 0;
    double max_s = 0;
    double mean_s() const { return count ? total_s / count : 0; }
  };
  const std::map<std::string, Dur>& durations() const { return durations_; }
  Dur duration_stats(const std::string& op) const {
    auto it = durations_.find(op);
    return it == durations_.end() ? Dur{} : it->second;
  }

  const std::map<std::string, double>& counters() const { return counters_; }

  std::string to_csv() const;

 private:
  std::map<std::string, double> counters_;
  std::map<std::string, Dur> durations_;
};

}  // namespace trustsas::sim
