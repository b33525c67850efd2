#include "cspp/bench/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace cspp::bench {

double median(std::vector<double> samples) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const auto n = samples.size();
  return n % 2 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2.0;
}

double efficiency(double speedup, std::size_t workers) {
  return workers == 0 ? 0.0 : speedup / static_cast<double>(workers) * 100.0;
}

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

double timed_median(const std::function<void()>& fn, std::size_t repeats) {
  std::vector<double> samples;
  for (std::size_t i = 0; i < repeats; ++i) samples.push_back(time_ms(fn));
  return median(std::move(samples));
}

}  // namespace

std::vector<BenchRow> bench_run(const BenchPlan& plan, std::size_t repeats) {
  if (repeats < 3) throw std::invalid_argument("bench needs at least 3 repeats");
  if (!plan.sequential) throw std::invalid_argument("bench plan has no sequential baseline");
  plan.sequential();
  std::vector<BenchRow> rows;
  const double seq = timed_median(plan.sequential, repeats);
  rows.push_back({plan.demo, plan.config, 0, repeats, seq, 1.0, 0.0});
  for (const auto& c : plan.cases) {
    const double par = timed_median(c.parallel, repeats);
    const double speedup = par > 0.0 ? seq / par : 0.0;
    rows.push_back({plan.demo, plan.config, c.workers, repeats, par, speedup, efficiency(speedup, c.workers)});
  }
  return rows;
}

namespace {

std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}

}  // namespace

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = std::string(csv_header) + '\n';
  for (const auto& r : rows) {
    out += csv_field(r.demo) + ',' + csv_field(r.config) + ',' + std::to_string(r.workers) + ',' +
           std::to_string(r.runs) + ',' + fixed(r.median_ms, 3) + ',' + fixed(r.speedup, 2) + ',' +
           (r.workers == 0 ? std::string() : fixed(r.efficiency, 2)) + '\n';
  }
  return out;
}

std::string to_table(const std::vector<BenchRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-28s %8s %5s %12s %8s %10s\n", "demo", "config", "workers", "runs",
                "median ms", "speedup", "efficiency");
  out += line;
  for (const auto& r : rows) {
    const std::string workers = r.workers == 0 ? "seq" : std::to_string(r.workers);
    const std::string eff = r.workers == 0 ? "" : fixed(r.efficiency, 2);
    std::snprintf(line, sizeof line, "%-12s %-28s %8s %5zu %12.3f %8.2f %10s\n", r.demo.c_str(), r.config.c_str(),
                  workers.c_str(), r.runs, r.median_ms, r.speedup, eff.c_str());
    out += line;
  }
  return out;
}

}  // namespace cspp::bench
