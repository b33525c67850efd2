#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cspp/engines/image.hpp"
#include "cspp/engines/shared_grid.hpp"
#include "cspp/kernel/channel.hpp"
#include "cspp/protocol/message.hpp"

namespace cspp {

/// Convolution kernel with odd dimensions. Each output sample is
/// clamp(round(sum * scale + offset)) over a clamp-to-edge neighbourhood.
struct Kernel {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> weights;  // row-major
  double scale = 1.0;
  double offset = 0.0;
};

/// Pointwise operation: writes dst.channels samples for pixel (x, y).
using PointFn = std::function<void(const Image& src, std::size_t x, std::size_t y, std::uint8_t* out)>;

/// Payload flowing between chained stencil engines: two image buffers, the
/// active index and the row partitions computed by the first engine.
struct StencilImage {
  std::array<Image, 2> buffers;
  std::size_t active = 0;
  std::vector<Range> partitions;

  const Image& current() const noexcept { return buffers[active]; }
};

struct StencilConfig {
  std::size_t nodes = 1;
  bool partition = true;  // first engine of a chain computes the partitions
  PointFn function;
  std::optional<Kernel> convolution;
  std::size_t output_channels = 0;  // 0 keeps the input channel count
};

void stencil_validate(const StencilConfig& config);

/// Applies one operation to the image in place using `nodes` threads.
void stencil_apply(const StencilConfig& config, StencilImage& image);

/// Engine process. Accepts Image or StencilImage payloads and forwards a
/// StencilImage whose current() buffer holds the result.
void stencil_engine_run(const StencilConfig& config, In<Message> in, Out<Message> out);

/// Integer luma: (299 r + 587 g + 114 b + 500) / 1000. Identity on grey input.
PointFn greyscale();

/// The 3x3 and 5x5 edge kernels: -1 everywhere except the centre, which
/// balances the sum to zero.
Kernel edge_kernel(std::size_t size);

/// Single-threaded reference application of one operation.
Image apply_sequential(const StencilConfig& config, const Image& src);

}  // namespace cspp
