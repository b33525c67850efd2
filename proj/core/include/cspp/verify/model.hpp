#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cspp::verify {

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Abstract values carried by model channels. 0 is the universal terminator;
/// data values pack an object letter (1..15) in the low nibble and the number
/// of worker functions applied so far above it.
using Value = int;

constexpr Value ut = 0;
constexpr Value combined = 15;  // letter used for a Combine output

constexpr int letter(Value v) noexcept { return v & 0xF; }
constexpr int primes(Value v) noexcept { return v >> 4; }
constexpr Value apply(Value v, int times) noexcept { return v == ut ? ut : v + (times << 4); }

/// "UT", "A", "B'", "C'''" ...
std::string value_name(Value v);

enum class Term { emit, spread, worker, reduce, collect, combine };

/// One process of the fixed repertoire. `in` / `out` name channels; for
/// indexed channels a worker uses element `index`, a spreader writes every
/// element and a reducer reads every element.
struct ProcessTerm {
  Term term = Term::worker;
  std::string in;
  std::string out;
  int index = 0;   // worker: element of in/out it uses; spread: first output
  int apply = 1;   // worker: primes added to each data value
  bool forward_ut = true;  // false builds a defective worker that swallows UT
};

struct ChannelDecl {
  std::string name;
  int width = 1;  // 1 = plain channel, otherwise an indexed family name.0 .. name.(width-1)
};

struct AbstractModel {
  std::string name;
  int alphabet = 5;  // Emit produces letters 1..alphabet then UT
  std::vector<ChannelDecl> channels;
  std::vector<ProcessTerm> processes;
  std::set<std::string> hidden;

  const ChannelDecl* channel(const std::string& name) const;
};

/// Checks references, widths and alphabet bounds. Throws VerifyError.
void validate(const AbstractModel& m);

/// Name of the event Collect offers once it has read UT.
inline const std::string finished_event = "finished.True";
/// Pseudo-event closing a trace that ends in successful termination.
inline const std::string tick_event = "tick";

}  // namespace cspp::verify
