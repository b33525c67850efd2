#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cspp/kernel/errors.hpp"

namespace cspp {

/// Half-open index range [begin, end).
struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
  bool operator==(const Range&) const = default;
};

/// Contiguous partitions of ceil(domain / nodes) units each, the last one
/// shorter. `granularity` groups indices into units (e.g. image rows), so a
/// partition boundary never splits a unit. Nodes past the end of the domain
/// get empty ranges.
std::vector<Range> partition_ranges(std::size_t domain, std::size_t nodes, std::size_t granularity = 1);

/// A double-buffered data region shared by the nodes of an engine. Every node
/// reads the current buffer; node i writes the next buffer only inside
/// partitions[i]. swap() is called by the root between barrier phases.
template <class T>
class SharedGrid {
 public:
  SharedGrid() = default;
  SharedGrid(std::size_t size, std::size_t nodes, T fill = T{})
      : buffers_{std::vector<T>(size, fill), std::vector<T>(size, fill)},
        partitions_(partition_ranges(size, nodes)) {}

  std::size_t size() const noexcept { return buffers_[0].size(); }
  std::size_t active() const noexcept { return active_; }

  const std::vector<T>& current() const noexcept { return buffers_[active_]; }
  std::vector<T>& current_mut() noexcept { return buffers_[active_]; }
  const std::vector<T>& next() const noexcept { return buffers_[1 - active_]; }
  const T& operator[](std::size_t i) const { return buffers_[active_][i]; }

  void write(std::size_t node, std::size_t i, const T& value) {
    if (check_writes_ && !partitions_.at(node).contains(i))
      throw ProcessError(errc::configuration, "node " + std::to_string(node) + " wrote index " +
                                                  std::to_string(i) + " outside its partition");
    buffers_[1 - active_][i] = value;
  }

  void swap() noexcept { active_ = 1 - active_; }

  const std::vector<Range>& partitions() const noexcept { return partitions_; }
  void set_partitions(std::vector<Range> p) { partitions_ = std::move(p); }

  /// Debug mode: every write is checked against the writer's partition.
  void check_writes(bool on) noexcept { check_writes_ = on; }

 private:
  std::array<std::vector<T>, 2> buffers_;
  std::vector<Range> partitions_;
  std::size_t active_ = 0;
  bool check_writes_ = false;
};

}  // namespace cspp
