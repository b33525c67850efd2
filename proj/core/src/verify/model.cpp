#include "cspp/verify/model.hpp"

#include <set>

namespace cspp::verify {

std::string value_name(Value v) {
  if (v == ut) return "UT";
  std::string s;
  s += letter(v) == combined ? 'S' : static_cast<char>('A' + letter(v) - 1);
  s.append(static_cast<std::size_t>(primes(v)), '\'');
  return s;
}

const ChannelDecl* AbstractModel::channel(const std::string& name) const {
  for (const auto& c : channels) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

const ChannelDecl& need(const AbstractModel& m, const std::string& name, std::size_t p) {
  const ChannelDecl* c = m.channel(name);
  if (c == nullptr) {
    throw VerifyError("process " + std::to_string(p) + " uses undeclared channel '" + name + "'");
  }
  return *c;
}

}  // namespace

void validate(const AbstractModel& m) {
  if (m.alphabet < 0 || m.alphabet >= combined) {
    throw VerifyError("alphabet size must be in 0.." + std::to_string(combined - 1));
  }
  std::set<std::string> names;
  for (const auto& c : m.channels) {
    if (c.width < 1) throw VerifyError("channel '" + c.name + "' has width < 1");
    if (c.name.empty() || c.name == "finished") throw VerifyError("reserved channel name");
    if (!names.insert(c.name).second) throw VerifyError("channel '" + c.name + "' declared twice");
  }
  for (std::size_t p = 0; p < m.processes.size(); ++p) {
    const ProcessTerm& t = m.processes[p];
    const bool reads = t.term != Term::emit;
    const bool writes = t.term != Term::collect;
    if (reads) need(m, t.in, p);
    if (writes) need(m, t.out, p);
    switch (t.term) {
      case Term::worker:
        for (const auto* c : {&need(m, t.in, p), &need(m, t.out, p)}) {
          if (c->width > 1 && (t.index < 0 || t.index >= c->width)) {
            throw VerifyError("worker " + std::to_string(p) + " index out of range for '" +
                              c->name + "'");
          }
        }
        if (t.apply < 0) throw VerifyError("worker apply count must be >= 0");
        break;
      case Term::spread:
        if (t.index < 0 || t.index >= need(m, t.out, p).width) {
          throw VerifyError("spread start index out of range");
        }
        break;
      default:
        break;
    }
  }
}

}  // namespace cspp::verify
