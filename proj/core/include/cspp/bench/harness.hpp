#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace cspp::bench {

struct BenchRow {
  std::string demo;
  std::string config;
  std::size_t workers = 0;  // 0 marks the sequential baseline
  std::size_t runs = 0;
  double median_ms = 0.0;
  double speedup = 1.0;
  double efficiency = 0.0;  // speedup / workers * 100
};

struct BenchCase {
  std::size_t workers = 1;
  std::function<void()> parallel;
};

/// One configuration of one demo: the sequential baseline and the parallel
/// runs to compare against it.
struct BenchPlan {
  std::string demo;
  std::string config;
  std::function<void()> sequential;
  std::vector<BenchCase> cases;
};

double median(std::vector<double> samples);
double efficiency(double speedup, std::size_t workers);

/// Times every case `repeats` times (at least 3) after one untimed warm-up
/// of the baseline. Configurations run strictly one after another.
/// The first row is the baseline.
std::vector<BenchRow> bench_run(const BenchPlan& plan, std::size_t repeats);

inline constexpr const char* csv_header = "demo,config,workers,runs,median_ms,speedup,efficiency";

std::string to_csv(const std::vector<BenchRow>& rows);
std::string to_table(const std::vector<BenchRow>& rows);

}  // namespace cspp::bench
