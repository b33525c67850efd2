#include <fstream>
#include <functional>
#include <iostream>

#include "commands.hpp"
#include "cspp/bench/concordance.hpp"
#include "cspp/bench/goldbach.hpp"
#include "cspp/bench/harness.hpp"
#include "cspp/bench/jacobi.hpp"
#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"
#include "cspp/bench/nbody.hpp"
#include "cspp/bench/stencil_demo.hpp"

namespace cspp::cli {

using namespace cspp::bench;

namespace {

template <class T>
void set(T& field, const std::optional<T>& flag) {
  if (flag) field = *flag;
}

struct Demo {
  std::string config;
  std::function<Payload(std::size_t workers)> parallel;
  std::function<Payload()> sequential;
};

Demo montecarlo(const DemoFlags& f) {
  MonteCarloConfig c;
  set(c.instances, f.instances);
  set(c.iterations, f.iterations);
  set(c.seed, f.seed);
  return {"instances=" + std::to_string(c.instances) + " iterations=" + std::to_string(c.iterations),
          [c](std::size_t w) mutable {
            c.workers = w;
            return Payload(montecarlo_run(c));
          },
          [c] { return Payload(montecarlo_sequential(c)); }};
}

Demo concordance(const DemoFlags& f) {
  ConcordanceConfig c;
  set(c.file, f.file);
  if (c.file.empty()) c.file = "data/corpus.txt";
  set(c.N, f.words);
  set(c.min_seq_len, f.min_seq_len);
  if (f.arch) {
    if (*f.arch == "gop") {
      c.arch = ConcordanceArch::gop;
    } else if (*f.arch == "pog") {
      c.arch = ConcordanceArch::pog;
    } else {
      throw std::invalid_argument("--arch must be gop or pog");
    }
  }
  set(c.out_dir, f.out);
  return {"file=" + c.file + " N=" + std::to_string(c.N) +
              (c.arch == ConcordanceArch::gop ? " arch=gop" : " arch=pog"),
          [c](std::size_t w) mutable {
            c.width = w;
            return Payload(concordance_run(c));
          },
          [c] { return Payload(concordance_sequential(c)); }};
}

Demo jacobi(const DemoFlags& f) {
  JacobiConfig c;
  set(c.file, f.file);
  set(c.n, f.n);
  set(c.seed, f.seed);
  set(c.margin, f.margin);
  return {c.file.empty() ? "n=" + std::to_string(c.n) : "file=" + c.file,
          [c](std::size_t w) mutable {
            c.nodes = w;
            return Payload(jacobi_run(c));
          },
          [c] { return Payload(jacobi_sequential(c)); }};
}

Demo nbody(const DemoFlags& f) {
  NBodyConfig c;
  set(c.file, f.file);
  set(c.N, f.bodies);
  set(c.iterations, f.iterations);
  set(c.dt, f.dt);
  set(c.seed, f.seed);
  set(c.out_file, f.out);
  return {"N=" + std::to_string(c.N) + " iterations=" + std::to_string(c.iterations),
          [c](std::size_t w) mutable {
            c.nodes = w;
            return Payload(nbody_run(c));
          },
          [c] { return Payload(nbody_sequential(c)); }};
}

Demo stencil(const DemoFlags& f) {
  StencilDemoConfig c;
  set(c.in_file, f.file);
  set(c.width, f.width);
  set(c.height, f.height);
  set(c.seed, f.seed);
  set(c.out_file, f.out);
  if (f.kernel) c.kernel = parse_kernel(*f.kernel);
  return {(c.in_file.empty() ? std::to_string(c.width) + "x" + std::to_string(c.height) : c.in_file) +
              " kernel=" + to_string(c.kernel),
          [c](std::size_t w) mutable {
            c.nodes = w;
            return Payload(stencil_run(c));
          },
          [c] { return Payload(stencil_sequential(c)); }};
}

Demo goldbach(const DemoFlags& f) {
  GoldbachConfig c;
  set(c.max_prime, f.max_prime);
  set(c.p_workers, f.p_workers);
  return {"maxPrime=" + std::to_string(c.max_prime) + " pWorkers=" + std::to_string(c.p_workers),
          [c](std::size_t w) mutable {
            c.g_workers = w;
            return Payload(goldbach_run(c));
          },
          [c] { return Payload(goldbach_sequential(c)); }};
}

Demo mandelbrot(const DemoFlags& f) {
  MandelbrotConfig c;
  set(c.width, f.width);
  set(c.height, f.height);
  set(c.pixel_delta, f.delta);
  set(c.max_iterations, f.max_iterations);
  set(c.out_file, f.out);
  return {std::to_string(c.width) + "x" + std::to_string(c.height) +
              " maxIterations=" + std::to_string(c.max_iterations),
          [c](std::size_t w) mutable {
            c.workers = w;
            return Payload(mandelbrot_run(c));
          },
          [c] { return Payload(mandelbrot_sequential(c)); }};
}

Demo make_demo(const std::string& name, const DemoFlags& f) {
  if (name == "montecarlo") return montecarlo(f);
  if (name == "concordance") return concordance(f);
  if (name == "jacobi") return jacobi(f);
  if (name == "nbody") return nbody(f);
  if (name == "stencil") return stencil(f);
  if (name == "goldbach") return goldbach(f);
  if (name == "mandelbrot") return mandelbrot(f);
  std::string known;
  for (const auto& n : demo_names()) known += " " + n;
  throw std::invalid_argument("unknown demo '" + name + "'; one of:" + known);
}

}  // namespace

int bench_command(const BenchOptions& options) {
  Demo demo;
  try {
    demo = make_demo(options.demo, options.flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return exit_invalid;
  }
  if (options.flags.workers.empty()) {
    std::cerr << "--workers needs at least one value\n";
    return exit_invalid;
  }

  const bool timing = options.repeats > 0 || !options.csv.empty();
  if (!timing) {
    try {
      Payload result = options.sequential ? demo.sequential() : demo.parallel(options.flags.workers.front());
      std::cout << options.demo << " (" << demo.config << "): " << describe(result) << "\n";
    } catch (const DemoError& e) {
      std::cerr << options.demo << " failed: " << e.what() << "\n";
      return e.code() < 0 ? exit_user_error : exit_failure;
    }
    return exit_ok;
  }

  if (options.repeats != 0 && options.repeats < 3) {
    std::cerr << "--repeats must be at least 3\n";
    return exit_invalid;
  }
  BenchPlan plan;
  plan.demo = options.demo;
  plan.config = demo.config;
  plan.sequential = [&] { demo.sequential(); };
  if (!options.sequential) {
    for (std::size_t w : options.flags.workers) {
      plan.cases.push_back({w, [&demo, w] { demo.parallel(w); }});
    }
  }
  const auto rows = bench_run(plan, options.repeats == 0 ? 3 : options.repeats);
  std::cout << to_table(rows);
  if (!options.csv.empty()) {
    std::ofstream out(options.csv);
    if (!out) {
      std::cerr << "cannot write " << options.csv << "\n";
      return exit_failure;
    }
    out << to_csv(rows);
  }
  return exit_ok;
}

}  // namespace cspp::cli
