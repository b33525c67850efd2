#include <sstream>

#include "commands.hpp"
#include "cspp/bench/concordance.hpp"
#include "cspp/bench/goldbach.hpp"
#include "cspp/bench/jacobi.hpp"
#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"
#include "cspp/bench/nbody.hpp"
#include "cspp/bench/stencil_demo.hpp"

namespace cspp::cli {

using namespace cspp::bench;

std::vector<std::string> demo_names() {
  return {"montecarlo", "concordance", "jacobi", "nbody", "stencil", "goldbach", "mandelbrot"};
}

namespace {

std::string written(const std::string& path) { return path.empty() ? "" : ", written to " + path; }

}  // namespace

std::string describe(const Payload& result) {
  std::ostringstream os;
  os.precision(10);
  if (const auto* p = result.get_if<PiResults>()) {
    os << "pi ~ " << p->pi << " (" << p->within_sum << " of " << p->iteration_sum << " points inside)";
  } else if (const auto* c = result.get_if<ConcordanceResult>()) {
    os << "concordance:";
    for (const auto& [n, words] : c->entries) os << " n=" << n << " " << words.size() << " entries;";
    os << " minSeqLen " << c->min_seq_len << written(c->out_dir);
  } else if (const auto* j = result.get_if<JacobiResults>()) {
    double worst = 0.0;
    for (const auto& s : j->solutions) worst = std::max(worst, s.max_error);
    os << j->solutions.size() << " systems solved, max error " << worst
       << (j->verified ? ", verified" : ", NOT verified");
  } else if (const auto* b = result.get_if<NBodyResult>()) {
    os << b->bodies.size() << " bodies after " << b->steps << " steps" << written(b->path);
  } else if (const auto* i = result.get_if<ImageResult>()) {
    os << i->image.width << "x" << i->image.height << " image" << written(i->path);
  } else if (const auto* m = result.get_if<MandelbrotImage>()) {
    os << m->image.width << "x" << m->image.height << " image" << written(m->path);
  } else if (const auto* g = result.get_if<GoldbachResult>()) {
    os << "every even in [4, " << g->max_continuous << "] is a sum of two primes (checked up to "
       << g->bound << ")";
  } else {
    os << "result of type " << result.type().name();
  }
  return os.str();
}

}  // namespace cspp::cli
