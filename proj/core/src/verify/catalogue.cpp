#include "cspp/verify/catalogue.hpp"

namespace cspp::verify {

namespace {

ProcessTerm term(Term t, std::string in, std::string out, int index = 0) {
  ProcessTerm p;
  p.term = t;
  p.in = std::move(in);
  p.out = std::move(out);
  p.index = index;
  return p;
}

std::string stage_channel(int k) { return std::string(1, static_cast<char>('b' + k)); }

void check_positive(int v, const char* what) {
  if (v < 1) throw VerifyError(std::string(what) + " must be >= 1");
}

// Emit -> Spread -> [stage channels b, c, ...] -> Reduce -> Collect. The
// caller adds the workers between b and the last stage channel.
AbstractModel skeleton(std::string name, int width, int stages, int alphabet) {
  AbstractModel m;
  m.name = std::move(name);
  m.alphabet = alphabet;
  m.channels.push_back({"a", 1});
  for (int k = 0; k <= stages; ++k) m.channels.push_back({stage_channel(k), width});
  const std::string last = std::string(1, static_cast<char>('b' + stages + 1));
  m.channels.push_back({last, 1});
  m.processes.push_back(term(Term::emit, "", "a"));
  m.processes.push_back(term(Term::spread, "a", "b"));
  m.processes.push_back(term(Term::reduce, stage_channel(stages), last));
  m.processes.push_back(term(Term::collect, last, ""));
  m.hidden = all_channels(m);
  return m;
}

}  // namespace

AbstractModel farm_model(int n, int alphabet, int start) {
  check_positive(n, "farm workers");
  AbstractModel m = skeleton("farm(" + std::to_string(n) + ")", n, 1, alphabet);
  m.processes[1].index = start;
  for (int i = 0; i < n; ++i) m.processes.push_back(term(Term::worker, "b", "c", i));
  validate(m);
  return m;
}

AbstractModel gop_model(int pipes, int stages, int alphabet) {
  check_positive(pipes, "pipes");
  check_positive(stages, "stages");
  AbstractModel m = skeleton("gop(" + std::to_string(pipes) + "x" + std::to_string(stages) + ")",
                             pipes, stages, alphabet);
  for (int x = 0; x < pipes; ++x) {
    for (int k = 0; k < stages; ++k) {
      m.processes.push_back(term(Term::worker, stage_channel(k), stage_channel(k + 1), x));
    }
  }
  return m;
}

AbstractModel pog_model(int stages, int workers, int alphabet) {
  check_positive(stages, "groups");
  check_positive(workers, "group workers");
  AbstractModel m = skeleton("pog(" + std::to_string(stages) + "x" + std::to_string(workers) + ")",
                             workers, stages, alphabet);
  for (int k = 0; k < stages; ++k) {
    for (int x = 0; x < workers; ++x) {
      m.processes.push_back(term(Term::worker, stage_channel(k), stage_channel(k + 1), x));
    }
  }
  return m;
}

AbstractModel emit_collect_model(int alphabet) {
  AbstractModel m;
  m.name = "emit-collect";
  m.alphabet = alphabet;
  m.channels.push_back({"a", 1});
  m.processes.push_back(term(Term::emit, "", "a"));
  m.processes.push_back(term(Term::collect, "a", ""));
  return m;
}

AbstractModel test_system() {
  // Collect fed only UT: finished is its sole visible event.
  AbstractModel m = emit_collect_model(0);
  m.name = "test-system";
  m.hidden = {"a"};
  return m;
}

AbstractModel catalogue_model(const std::string& name, int n, int alphabet) {
  if (name == "farm") return farm_model(n, alphabet);
  if (name == "gop") return gop_model(n, 3, alphabet);
  if (name == "pog") return pog_model(3, n, alphabet);
  throw VerifyError("unknown model '" + name + "' (expected farm, gop or pog)");
}

std::vector<std::string> catalogue_names() { return {"farm", "gop", "pog"}; }

std::set<std::string> all_channels(const AbstractModel& m) {
  std::set<std::string> s;
  for (const auto& c : m.channels) s.insert(c.name);
  return s;
}

}  // namespace cspp::verify
