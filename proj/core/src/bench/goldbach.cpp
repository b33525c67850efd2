#include "cspp/bench/goldbach.hpp"

#include <algorithm>
#include <cmath>

#include "cspp/engines/shared_grid.hpp"
#include "params.hpp"

namespace cspp::bench {

std::size_t sieve_filter(std::size_t max_prime) {
  return static_cast<std::size_t>(std::sqrt(static_cast<double>(max_prime))) + 1;
}

namespace {

std::vector<std::uint32_t> simple_sieve(std::uint32_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t m = std::uint64_t{i} * i; m <= limit; m += i) composite[m] = 1;
  }
  return primes;
}

struct PrimeClass {
  std::uint32_t limit = 0;
};

// Both groups read their index and size from the modifier.
std::optional<Range> my_range(const Params& modifier, std::size_t domain) {
  auto index = detail::param<std::size_t>(modifier, 0);
  auto workers = detail::param<std::size_t>(modifier, 1);
  if (!index || !workers || *index >= *workers) return std::nullopt;
  return partition_ranges(domain, *workers)[*index];
}

GoldbachResult continuous(std::vector<GoldbachRange> ranges, std::uint64_t bound) {
  std::sort(ranges.begin(), ranges.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  GoldbachResult r{bound, 2};
  for (const auto& g : ranges) {
    if (g.empty) continue;
    if (g.lo != r.max_continuous + 2) break;  // a gap: nothing beyond counts
    if (g.first_failure) {
      r.max_continuous = *g.first_failure - 2;
      break;
    }
    r.max_continuous = g.hi;
  }
  if (r.max_continuous < 4) r.max_continuous = 0;
  return r;
}

struct GoldbachCollect {
  std::vector<GoldbachRange> ranges;
  std::uint64_t bound = 0;
};

}  // namespace

EmitDetails goldbach_prime() {
  return emit_with_local_details<PrimeClass, Prime, SmallSieve>(
      [](PrimeClass& c, const Params& p) {
        auto limit = detail::param<std::uint32_t>(p, 0);
        if (!limit || *limit < 4) return StepResult::error(detail::bad_params, "goldbach init needs [maxPrime >= 4]");
        c.limit = *limit;
        return StepResult::completed_ok();
      },
      Params::array({50000}),
      [](PrimeClass& c, Prime& prime, SmallSieve& sieve, const Params&) {
        if (sieve.next >= sieve.primes.size()) return StepResult::normal_termination();
        prime.value = sieve.primes[sieve.next++];
        prime.limit = c.limit;
        return StepResult::normal_continuation();
      },
      Params::array(), goldbach_sieve());
}

LocalDetails goldbach_sieve() {
  return local_details<SmallSieve>(
      [](SmallSieve& s, const Params& p) {
        auto filter = detail::param<std::uint32_t>(p, 0);
        if (!filter) return StepResult::error(detail::bad_params, "sieve init needs [filter]");
        s.primes = simple_sieve(*filter);
        s.next = 0;
        return StepResult::completed_ok();
      },
      Params::array({sieve_filter(50000)}));
}

WorkerFn sieve_prime() {
  return [](Payload& item, const Params& modifier, Payload* local) {
    const auto& prime = item.as<Prime>();
    auto& seg = local->as<SieveSegment>();
    if (seg.composite.empty() && seg.hi == 0) {
      // Numbers 2..limit, split between the sieve workers.
      auto r = my_range(modifier, prime.limit - 1);
      if (!r) return StepResult::error(detail::bad_params, "sieve worker needs modifier [index, workers]");
      seg.lo = static_cast<std::uint32_t>(r->begin + 2);
      seg.hi = static_cast<std::uint32_t>(r->end + 2);
      seg.composite.assign(seg.hi - seg.lo, 0);
    }
    const std::uint64_t p = prime.value;
    std::uint64_t m = std::max<std::uint64_t>(p * p, (seg.lo + p - 1) / p * p);
    for (; m < seg.hi; m += p) seg.composite[m - seg.lo] = 1;
    return StepResult::completed_ok();
  };
}

LocalDetails sieve_segment() {
  return local_details<SieveSegment>([](SieveSegment&, const Params&) { return StepResult::completed_ok(); },
                                      Params::array());
}

CombineConfig to_integers() {
  CombineConfig c;
  c.accumulator = local_details<PrimeList>([](PrimeList&, const Params&) { return StepResult::completed_ok(); },
                                           Params::array());
  c.combine = [](Payload& acc, Payload& item) {
    auto& list = acc.as<PrimeList>();
    const auto& seg = item.as<SieveSegment>();
    list.limit = std::max(list.limit, seg.hi == 0 ? 0 : seg.hi - 1);
    for (std::uint32_t v = seg.lo; v < seg.hi; ++v)
      if (!seg.composite[v - seg.lo]) list.primes.push_back(v);
    return StepResult::completed_ok();
  };
  c.output = [](Payload&& acc) {
    auto& list = acc.as<PrimeList>();
    std::sort(list.primes.begin(), list.primes.end());
    return std::move(acc);
  };
  return c;
}

WorkerFn get_range() {
  return [](Payload& item, const Params& modifier, Payload* local) {
    const auto& list = item.as<PrimeList>();
    auto& g = local->as<GoldbachRange>();
    const std::uint64_t limit = list.limit;
    // Evens 4, 6, ..., 2 * limit: limit - 1 of them.
    auto r = my_range(modifier, limit - 1);
    if (!r) return StepResult::error(detail::bad_params, "goldbach worker needs modifier [index, workers]");
    g = GoldbachRange{};
    if (r->size() == 0) return StepResult::completed_ok();
    g.empty = false;
    g.lo = 4 + 2 * r->begin;
    g.hi = 4 + 2 * (r->end - 1);
    std::vector<char> is_prime(limit + 1, 0);
    for (auto p : list.primes) is_prime[p] = 1;
    for (std::uint64_t e = g.lo; e <= g.hi; e += 2) {
      bool found = false;
      for (auto p : list.primes) {
        if (2 * std::uint64_t{p} > e) break;
        const std::uint64_t q = e - p;
        if (q <= limit && is_prime[q]) {
          found = true;
          break;
        }
      }
      if (!found) {
        g.first_failure = e;
        break;
      }
    }
    return StepResult::completed_ok();
  };
}

LocalDetails goldbach_range() {
  return local_details<GoldbachRange>([](GoldbachRange&, const Params&) { return StepResult::completed_ok(); },
                                      Params::array());
}

ResultDetails goldbach_results() {
  ResultDetails d;
  d.make = [] { return Payload(GoldbachCollect{}); };
  d.collect = [](Payload& r, Payload& item) {
    auto& c = r.as<GoldbachCollect>();
    const auto& g = item.as<GoldbachRange>();
    c.bound = std::max(c.bound, g.hi);
    c.ranges.push_back(g);
    return StepResult::completed_ok();
  };
  d.finalise = [](Payload& r, const Params&) {
    auto& c = r.as<GoldbachCollect>();
    GoldbachResult result = continuous(std::move(c.ranges), c.bound);
    r = Payload(result);
    return StepResult::completed_ok();
  };
  return d;
}

void register_goldbach(FunctionRegistry& registry) {
  registry.add("goldbach.prime", goldbach_prime());
  registry.add("goldbach.sieve", goldbach_sieve());
  registry.add("goldbach.sievePrime", sieve_prime());
  registry.add("goldbach.segment", sieve_segment());
  registry.add("goldbach.toIntegers", to_integers());
  registry.add("goldbach.getRange", get_range());
  registry.add("goldbach.range", goldbach_range());
  registry.add("goldbach.results", goldbach_results());
}

namespace {

Params indexed_modifiers(std::size_t workers) {
  Params m = Params::array();
  for (std::size_t i = 0; i < workers; ++i) m.push_back({i, workers});
  return m;
}

}  // namespace

NetworkSpec goldbach_spec(const GoldbachConfig& config) {
  const auto p = config.p_workers;
  const auto g = config.g_workers;
  NetworkSpec spec;
  spec.nodes = {
      {"emitWithLocal",
       {{"details", "goldbach.prime"},
        {"local", "goldbach.sieve"},
        {"initData", {config.max_prime}},
        {"localInitData", {sieve_filter(config.max_prime)}}}},
      {"spreader", {{"policy", "seqCast"}, {"destinations", p}}},
      {"group",
       {{"workers", p},
        {"function", "goldbach.sievePrime"},
        {"local", "goldbach.segment"},
        {"outData", false},
        {"input", "list"},
        {"output", "list"},
        {"perWorkerModifiers", indexed_modifiers(p)}}},
      {"reducer", {{"policy", "roundRobin"}, {"sources", p}}},
      {"combine", {{"details", "goldbach.toIntegers"}, {"sources", 1}, {"input", "one"}}},
      {"spreader", {{"policy", "parCast"}, {"destinations", g}}},
      {"group",
       {{"workers", g},
        {"function", "goldbach.getRange"},
        {"local", "goldbach.range"},
        {"outData", false},
        {"input", "list"},
        {"output", "list"},
        {"perWorkerModifiers", indexed_modifiers(g)}}},
      {"reducer", {{"policy", "roundRobin"}, {"sources", g}}},
      {"collect", {{"details", "goldbach.results"}}},
  };
  return spec;
}

GoldbachResult goldbach_run(const GoldbachConfig& config, const BuildOptions& options) {
  auto report = run_spec(goldbach_spec(config), options);
  return report.results.at(0)->result.as<GoldbachResult>();
}

GoldbachResult goldbach_sequential(const GoldbachConfig& config) {
  auto check = [](const StepResult& r) {
    if (r.is_error()) throw DemoError(r.message(), r.code());
  };
  const Params single = {0, 1};
  const auto limit = static_cast<std::uint32_t>(config.max_prime);

  Payload segment(SieveSegment{});
  for (auto p : simple_sieve(static_cast<std::uint32_t>(sieve_filter(config.max_prime)))) {
    Payload item(Prime{p, limit});
    check(sieve_prime()(item, single, &segment));
  }
  auto combine = to_integers();
  Payload acc(PrimeList{});
  check(combine.combine(acc, segment));
  Payload primes = combine.output(std::move(acc));

  Payload range(GoldbachRange{});
  check(get_range()(primes, single, &range));
  auto results = goldbach_results();
  Payload r = results.make();
  check(results.collect(r, range));
  check(results.finalise(r, Params::array()));
  return r.as<GoldbachResult>();
}

GoldbachResult goldbach_oracle(std::size_t max_prime) {
  std::vector<char> prime(max_prime + 1, 1);
  prime[0] = 0;
  if (max_prime >= 1) prime[1] = 0;
  for (std::size_t i = 2; i <= max_prime; ++i) {
    if (!prime[i]) continue;
    for (std::size_t j = 2 * i; j <= max_prime; j += i) prime[j] = 0;
  }
  GoldbachResult r{2 * max_prime, 0};
  for (std::uint64_t e = 4; e <= 2 * max_prime; e += 2) {
    bool ok = false;
    for (std::uint64_t a = 2; a <= e / 2 && !ok; ++a) ok = a <= max_prime && e - a <= max_prime && prime[a] && prime[e - a];
    if (!ok) break;
    r.max_continuous = e;
  }
  return r;
}

}  // namespace cspp::bench
