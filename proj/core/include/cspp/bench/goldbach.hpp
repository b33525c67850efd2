#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cspp/bench/common.hpp"

namespace cspp::bench {

struct GoldbachConfig {
  std::size_t max_prime = 50000;
  std::size_t p_workers = 1;
  std::size_t g_workers = 2;
};

/// floor(sqrt(maxPrime)) + 1
std::size_t sieve_filter(std::size_t max_prime);

/// One small prime on its way to the sieve group.
struct Prime {
  std::uint32_t value = 0;
  std::uint32_t limit = 0;  // maxPrime
};

/// The emitter's local helper: yields the primes up to the filter.
struct SmallSieve {
  std::vector<std::uint32_t> primes;
  std::size_t next = 0;
};

/// A sieve worker's share of [2, limit]: composite flags for [lo, hi).
struct SieveSegment {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  std::vector<char> composite;
};

struct PrimeList {
  std::uint32_t limit = 0;
  std::vector<std::uint32_t> primes;  // ascending
};

/// A Goldbach worker's share of the evens in [4, 2 * limit].
struct GoldbachRange {
  std::uint64_t lo = 0;  // first even checked
  std::uint64_t hi = 0;  // last even checked
  std::optional<std::uint64_t> first_failure;
  bool empty = true;
};

struct GoldbachResult {
  std::uint64_t bound = 0;           // largest even examined
  std::uint64_t max_continuous = 0;  // every even in [4, max_continuous] decomposes
};

/// EmitWithLocal: local init [filter]; create emits each small prime.
EmitDetails goldbach_prime();
LocalDetails goldbach_sieve();
/// Group 1 function, modifier [index, workers]; local is a SieveSegment.
WorkerFn sieve_prime();
LocalDetails sieve_segment();
CombineConfig to_integers();
/// Group 2 function, modifier [index, workers]; local is a GoldbachRange.
WorkerFn get_range();
LocalDetails goldbach_range();
ResultDetails goldbach_results();

void register_goldbach(FunctionRegistry& registry);

/// EmitWithLocal -> seqCast -> sieve group -> reduce -> combine -> parCast
/// -> Goldbach group -> reduce -> Collect.
NetworkSpec goldbach_spec(const GoldbachConfig& config);

GoldbachResult goldbach_run(const GoldbachConfig& config, const BuildOptions& options = {});
/// The same callbacks in a plain loop: one sieve segment, one range.
GoldbachResult goldbach_sequential(const GoldbachConfig& config);

/// Independent check: trial decomposition of every even in [4, 2 * maxPrime]
/// using only primes <= maxPrime.
GoldbachResult goldbach_oracle(std::size_t max_prime);

}  // namespace cspp::bench
