#include "cspp/engines/shared_grid.hpp"

namespace cspp {

std::vector<Range> partition_ranges(std::size_t domain, std::size_t nodes, std::size_t granularity) {
  if (nodes == 0) throw ConfigurationError("partition needs nodes >= 1");
  if (granularity == 0) throw ConfigurationError("partition granularity must be >= 1");
  const std::size_t units = (domain + granularity - 1) / granularity;
  const std::size_t per = (units + nodes - 1) / nodes;
  std::vector<Range> ranges;
  ranges.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const std::size_t b = std::min(domain, i * per * granularity);
    const std::size_t e = std::min(domain, (i + 1) * per * granularity);
    ranges.push_back(Range{b, e});
  }
  return ranges;
}

}  // namespace cspp
