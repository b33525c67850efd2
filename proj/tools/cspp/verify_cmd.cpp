#include <chrono>
#include <iostream>

#include "commands.hpp"
#include "cspp/verify/catalogue.hpp"
#include "cspp/verify/explorer.hpp"

namespace cspp::cli {

int verify_command(const VerifyOptions& options) {
  using namespace cspp::verify;
  const AbstractModel m = catalogue_model(options.model, options.n, options.alphabet);
  const auto t0 = std::chrono::steady_clock::now();
  const ExplorationResult r = explore(m, options.cap);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << summary(m, r) << "  explored in " << seconds << " s\n";
  bool ok = r.deadlock_free() && r.terminated && !r.divergent;

  if (ok) {
    const auto traces = trace_set(m, all_channels(m), options.cap);
    std::cout << "  visible traces with every channel hidden: " << traces.size() << "\n";
  }
  if (!options.equivalent.empty()) {
    const AbstractModel other = catalogue_model(options.equivalent, options.n, options.alphabet);
    auto hide = all_channels(m);
    for (const auto& c : all_channels(other)) hide.insert(c);
    const auto forward = check_refinement(m, other, hide, options.cap);
    const auto backward = check_refinement(other, m, hide, options.cap);
    const bool equal = forward.holds && backward.holds;
    std::cout << m.name << " vs " << other.name << ": "
              << (equal ? "trace equivalent" : "not trace equivalent") << "\n";
    for (const auto* res : {&forward, &backward}) {
      if (res->counterexample) {
        std::cout << "  counterexample <";
        for (std::size_t i = 0; i < res->counterexample->size(); ++i) {
          std::cout << (i ? ", " : "") << (*res->counterexample)[i];
        }
        std::cout << ">\n";
      }
    }
    ok = ok && equal;
  }
  return ok ? exit_ok : exit_invalid;
}

}  // namespace cspp::cli
