#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "cspp/bench/concordance.hpp"
#include "cspp/bench/goldbach.hpp"
#include "cspp/bench/harness.hpp"
#include "cspp/bench/jacobi.hpp"
#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"
#include "cspp/bench/nbody.hpp"
#include "cspp/bench/stencil_demo.hpp"
#include "cspp/engines/stencil.hpp"

using namespace cspp;
using namespace cspp::bench;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cspp_bench_" + name);
}

}  // namespace

TEST_CASE("splitmix64 matches the reference sequence") {
  // Seed 1234567: first outputs of the published reference implementation.
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("monte carlo estimate") {
  CHECK(pi_estimate(5, 5) == 4.0);
  MonteCarloConfig cfg;
  cfg.instances = 24;
  cfg.iterations = 2000;
  const auto seq = montecarlo_sequential(cfg);
  CHECK(seq.iteration_sum == 24 * 2000);
  for (std::size_t w : {1, 2, 4}) {
    cfg.workers = w;
    const auto par = montecarlo_run(cfg);
    CHECK(par.within_sum == seq.within_sum);
    CHECK(par.pi == seq.pi);
  }
  CHECK(std::fabs(seq.pi - M_PI) < 0.1);
}

TEST_CASE("concordance hand cases") {
  ConcordanceConfig cfg;
  cfg.text = "The cat, sat; the CAT.";
  cfg.N = 2;
  cfg.min_seq_len = 2;
  auto r = concordance_sequential(cfg);
  CHECK(r.entries[2] == WordsMap{{"the cat", {0, 3}}});
  CHECK(r.entries[1] == WordsMap{{"cat", {1, 4}}, {"the", {0, 3}}});
  CHECK(concordance_text(r.entries[1]) == "cat\t2\t1,4\nthe\t2\t0,3\n");
}

TEST_CASE("concordance value collisions are disambiguated") {
  // "ab" and "ba" share a letter-code sum.
  ConcordanceConfig cfg;
  cfg.text = "ab ba ab ba ba";
  cfg.N = 1;
  auto r = concordance_sequential(cfg);
  CHECK(r.entries[1] == WordsMap{{"ab", {0, 2}}, {"ba", {1, 3, 4}}});
}

TEST_CASE("concordance architectures agree with the sequential oracle") {
  ConcordanceConfig cfg;
  cfg.text = synthetic_text(6000, 5);
  cfg.N = 3;
  const auto seq = concordance_sequential(cfg);
  for (auto arch : {ConcordanceArch::gop, ConcordanceArch::pog}) {
    for (std::size_t w : {1, 2, 3}) {
      cfg.arch = arch;
      cfg.width = w;
      CHECK(concordance_run(cfg).entries == seq.entries);
    }
  }
}

TEST_CASE("concordance writes one sorted file per n") {
  ConcordanceConfig cfg;
  cfg.text = "a b a b c a b";
  cfg.N = 2;
  cfg.out_dir = temp_file("conc").string();
  std::filesystem::remove_all(cfg.out_dir);
  concordance_run(cfg);
  CHECK(read_text(cfg.out_dir + "/concordance_1.txt") == "a\t3\t0,2,5\nb\t3\t1,3,6\n");
  CHECK(read_text(cfg.out_dir + "/concordance_2.txt") == "a b\t3\t0,2,5\n");
  std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("jacobi closed form and identity") {
  const auto path = temp_file("jacobi.txt").string();
  LinearSystem s{2, {2, 1, 1, 2}, {3, 3}, {1, 1}};
  LinearSystem id{3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, {4, -2, 7}, {4, -2, 7}};
  write_text(path, format_systems({s, id}));
  JacobiConfig cfg;
  cfg.file = path;
  cfg.nodes = 2;
  auto r = jacobi_run(cfg);
  REQUIRE(r.solutions.size() == 2);
  CHECK(r.verified);
  CHECK(std::fabs(r.solutions[0].x[0] - 1.0) < 1e-9);
  CHECK(std::fabs(r.solutions[0].x[1] - 1.0) < 1e-9);
  CHECK(r.solutions[1].x == std::vector<double>{4, -2, 7});

  Payload d(JacobiData{id, {0, 0, 0}, {0, 0, 0}, {}, 0});
  auto engine = jacobi_engine();
  engine.error_margin.reset();
  engine.converged = nullptr;
  engine.iterations = 1;
  CHECK(engine_sequential(engine, d) == 1);
  CHECK(d.as<JacobiData>().x == std::vector<double>{4, -2, 7});
  std::filesystem::remove(path);
}

TEST_CASE("jacobi systems round-trip through text") {
  auto s = generate_system(9, 4);
  auto back = parse_systems(format_systems({s}));
  REQUIRE(back.size() == 1);
  CHECK(back[0].a == s.a);
  CHECK(back[0].b == s.b);
  CHECK(back[0].known == s.known);
}

TEST_CASE("jacobi generated system is node-count invariant") {
  JacobiConfig cfg;
  cfg.n = 96;
  const auto seq = jacobi_sequential(cfg);
  CHECK(seq.verified);
  for (std::size_t nodes : {1, 2, 4}) {
    cfg.nodes = nodes;
    auto r = jacobi_run(cfg);
    CHECK(r.solutions.at(0).x == seq.solutions.at(0).x);
    CHECK(r.solutions.at(0).max_error <= 1e-6);
  }
}

TEST_CASE("nbody single body moves uniformly") {
  const auto path = temp_file("one_body.txt").string();
  write_text(path, format_bodies({Body{1, 2, 3, 0.5, -0.25, 2, 1e20}}));
  NBodyConfig cfg;
  cfg.file = path;
  cfg.N = 1;
  cfg.iterations = 10;
  cfg.dt = 4;
  cfg.nodes = 1;
  auto r = nbody_run(cfg);
  Body b{1, 2, 3, 0.5, -0.25, 2, 1e20};
  for (int i = 0; i < 10; ++i) {
    b.x += b.vx * 4;
    b.y += b.vy * 4;
    b.z += b.vz * 4;
  }
  CHECK(r.bodies.at(0) == b);
  CHECK(r.steps == 10);
  std::filesystem::remove(path);
}

TEST_CASE("nbody symmetric pair keeps zero momentum") {
  Payload p(NBodyData{});
  auto& d = p.as<NBodyData>();
  d.bodies = {Body{-1e15, 3e14, 0, 10, -4, 1, 5e30}, Body{1e15, -3e14, 0, -10, 4, -1, 5e30}};
  d.next = d.bodies;
  auto engine = nbody_engine();
  for (int step = 1; step <= 50; ++step) {
    engine.iterations = 1;
    engine_sequential(engine, p);
    const auto& b = p.as<NBodyData>().bodies;
    CHECK(b[0].vx * b[0].mass + b[1].vx * b[1].mass == 0.0);
    CHECK(b[0].vy * b[0].mass + b[1].vy * b[1].mass == 0.0);
    CHECK(b[0].vz * b[0].mass + b[1].vz * b[1].mass == 0.0);
  }
}

TEST_CASE("nbody output is node-count invariant") {
  NBodyConfig cfg;
  cfg.N = 24;
  cfg.iterations = 20;
  const auto seq = format_bodies(nbody_sequential(cfg).bodies);
  for (std::size_t nodes : {1, 2, 4}) {
    cfg.nodes = nodes;
    CHECK(format_bodies(nbody_run(cfg).bodies) == seq);
  }
}

TEST_CASE("stencil demo chain is node-count invariant") {
  StencilDemoConfig cfg;
  cfg.width = 61;
  cfg.height = 47;
  for (auto k : {StencilKernel::grey, StencilKernel::edge3, StencilKernel::edge5}) {
    cfg.kernel = k;
    const auto seq = stencil_sequential(cfg).image;
    CHECK(seq.channels == 1);
    for (std::size_t nodes : {1, 2, 4}) {
      cfg.nodes = nodes;
      CHECK(stencil_run(cfg).image == seq);
    }
  }
  CHECK(parse_kernel("edge3") == StencilKernel::edge3);
  CHECK_THROWS(parse_kernel("blur"));
}

TEST_CASE("goldbach smallest cases") {
  // Primes up to 5 reach 4 = 2+2, 6 = 3+3, 8 = 3+5 and 10 = 5+5.
  CHECK(goldbach_oracle(5).max_continuous == 10);
  GoldbachConfig cfg;
  cfg.max_prime = 5;
  cfg.g_workers = 1;
  CHECK(goldbach_run(cfg).max_continuous == 10);
  CHECK(sieve_filter(50000) == 224);
}

TEST_CASE("goldbach network matches the brute-force oracle") {
  const auto oracle = goldbach_oracle(700);
  CHECK(goldbach_sequential({700, 1, 1}).max_continuous == oracle.max_continuous);
  for (std::size_t p : {1, 2}) {
    for (std::size_t g : {1, 2, 4}) {
      auto r = goldbach_run({700, p, g});
      CHECK(r.max_continuous == oracle.max_continuous);
      CHECK(r.bound == 1400);
    }
  }
}

TEST_CASE("mandelbrot escape counts") {
  CHECK(escape_count(0, 0, 100) == 100);
  CHECK(escape_count(2, 2, 100) == 1);
  std::uint8_t rgb[3] = {1, 1, 1};
  escape_colour(100, 100, rgb);
  CHECK((rgb[0] == 0 && rgb[1] == 0 && rgb[2] == 0));
}

TEST_CASE("mandelbrot rows reassemble identically") {
  MandelbrotConfig cfg;
  cfg.width = 70;
  cfg.height = 40;
  cfg.pixel_delta = 0.05;
  const auto seq = encode_pnm(mandelbrot_sequential(cfg).image);
  for (std::size_t w : {1, 3, 4}) {
    cfg.workers = w;
    CHECK(encode_pnm(mandelbrot_run(cfg).image) == seq);
  }
}

TEST_CASE("bench harness arithmetic and csv") {
  CHECK(efficiency(3.28, 4) == doctest::Approx(82.0));
  CHECK(median({5, 1, 3}) == 3);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  BenchPlan plan{"demo", "cfg", [] {}, {{2, [] {}}}};
  CHECK_THROWS_AS(bench_run(plan, 2), std::invalid_argument);
  auto rows = bench_run(plan, 3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].workers == 0);
  auto csv = to_csv(rows);
  CHECK(csv.rfind("demo,config,workers,runs,median_ms,speedup,efficiency\n", 0) == 0);
  CHECK(csv.find("demo,cfg,2,3,") != std::string::npos);
}

TEST_CASE("every demo spec validates and builds") {
  const auto& reg = demo_registry();
  std::vector<std::pair<std::string, NetworkSpec>> specs = {
      {"montecarlo", montecarlo_spec({})},
      {"concordance gop", concordance_spec({"corpus.txt"})},
      {"concordance pog", concordance_spec({"corpus.txt", "", 4, 2, ConcordanceArch::pog})},
      {"jacobi", jacobi_spec({})},
      {"nbody", nbody_spec({})},
      {"stencil", stencil_spec({})},
      {"goldbach", goldbach_spec({})},
      {"mandelbrot", mandelbrot_spec({})},
  };
  for (const auto& [name, spec] : specs) {
    INFO(name);
    auto diags = validate(spec, reg);
    for (const auto& d : diags) INFO(d.str());
    CHECK(diags.empty());
    CHECK_NOTHROW(build(spec, reg));
    // The JSON form loads back to the same nodes.
    CHECK(validate(load_spec(to_json(spec).dump()), reg).empty());
  }
}
