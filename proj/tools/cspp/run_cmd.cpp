#include <iostream>

#include "commands.hpp"
#include "cspp/bench/common.hpp"

namespace cspp::cli {

int run_command(const RunOptions& options) {
  NetworkSpec spec;
  try {
    spec = load_spec_file(options.spec);
  } catch (const SpecError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << options.spec << ": " << d.str() << "\n";
    return exit_invalid;
  }
  if (!options.log_file.empty()) spec.log_file = options.log_file;

  const auto& registry = bench::demo_registry();
  if (auto diagnostics = validate(spec, registry); !diagnostics.empty()) {
    for (const auto& d : diagnostics) std::cerr << options.spec << ": " << d.str() << "\n";
    return exit_invalid;
  }
  BuildOptions build_options;
  build_options.echo_log = options.echo;
  auto net = build(spec, registry, build_options);
  const std::size_t processes = net.process_count();
  NetworkReport report = run(net);
  if (!report.ok) {
    std::cerr << "network failed: " << report.message << " (code " << report.code << ")\n";
    return report.code < 0 ? exit_user_error : exit_failure;
  }
  std::cout << "ok: " << processes << " processes, "
            << std::chrono::duration<double, std::milli>(report.wall).count() << " ms\n";
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const auto& r = *report.results[i];
    std::cout << "collect " << i << ": " << r.collected << " objects";
    if (r.result.has_value()) std::cout << "; " << describe(r.result);
    std::cout << "\n";
  }
  if (report.log_path) std::cout << "log: " << report.log_path->string() << "\n";
  return exit_ok;
}

}  // namespace cspp::cli
