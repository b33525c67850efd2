#include "cspp/engines/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "node_team.hpp"

namespace cspp {
namespace {

std::uint8_t saturate(double v) {
  const long r = std::lround(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
}

std::size_t out_channels(const StencilConfig& c, const Image& src) {
  if (c.convolution) return src.channels;
  return c.output_channels == 0 ? src.channels : c.output_channels;
}

void check_fits(const StencilConfig& c, const Image& src) {
  if (c.convolution && (c.convolution->rows > src.height || c.convolution->cols > src.width))
    throw ProcessError(errc::configuration, "convolution kernel is larger than the image");
}

void convolve_row(const Kernel& k, const Image& src, Image& dst, std::size_t y) {
  const auto h = static_cast<long>(src.height), w = static_cast<long>(src.width);
  const long ry = static_cast<long>(k.rows / 2), rx = static_cast<long>(k.cols / 2);
  for (long x = 0; x < w; ++x) {
    for (std::size_t ch = 0; ch < src.channels; ++ch) {
      double sum = 0;
      for (long dy = -ry; dy <= ry; ++dy) {
        const auto sy = static_cast<std::size_t>(std::clamp(static_cast<long>(y) + dy, 0L, h - 1));
        for (long dx = -rx; dx <= rx; ++dx) {
          const auto sx = static_cast<std::size_t>(std::clamp(x + dx, 0L, w - 1));
          sum += k.weights[static_cast<std::size_t>((dy + ry) * static_cast<long>(k.cols) + (dx + rx))] *
                 src.at(sx, sy, ch);
        }
      }
      dst.at(static_cast<std::size_t>(x), y, ch) = saturate(sum * k.scale + k.offset);
    }
  }
}

void compute_row(const StencilConfig& c, const Image& src, Image& dst, std::size_t y) {
  if (c.convolution) {
    convolve_row(*c.convolution, src, dst, y);
    return;
  }
  for (std::size_t x = 0; x < src.width; ++x) c.function(src, x, y, &dst.pixels[(y * dst.width + x) * dst.channels]);
}

}  // namespace

void stencil_validate(const StencilConfig& c) {
  if (c.nodes == 0) throw ConfigurationError("stencil engine needs nodes >= 1");
  if (static_cast<bool>(c.function) == c.convolution.has_value())
    throw ConfigurationError("stencil engine needs exactly one of functionMethod and convolutionMethod");
  if (c.convolution) {
    const Kernel& k = *c.convolution;
    if (k.rows % 2 == 0 || k.cols % 2 == 0) throw ConfigurationError("convolution kernel dimensions must be odd");
    if (k.weights.size() != k.rows * k.cols) throw ConfigurationError("convolution kernel weight count mismatch");
  }
}

void stencil_apply(const StencilConfig& c, StencilImage& image) {
  const Image& src = image.buffers[image.active];
  check_fits(c, src);
  if (c.partition) {
    image.partitions = partition_ranges(src.height, c.nodes);
  } else if (image.partitions.size() != c.nodes) {
    throw ProcessError(errc::configuration,
                       "stencil engine without partitionMethod needs partitions for " + std::to_string(c.nodes) +
                           " nodes from an upstream engine");
  }
  Image& dst = image.buffers[1 - image.active];
  const std::size_t channels = out_channels(c, src);
  if (dst.width != src.width || dst.height != src.height || dst.channels != channels)
    dst = Image(src.width, src.height, channels);

  detail::NodeTeam team(c.nodes);
  team.run([&](std::size_t node) {
    const Range rows = image.partitions[node];
    for (std::size_t y = rows.begin; y < rows.end; ++y) compute_row(c, src, dst, y);
  });
  image.active = 1 - image.active;  // updateImageIndex
}

void stencil_engine_run(const StencilConfig& config, In<Message> in, Out<Message> out) {
  try {
    stencil_validate(config);
  } catch (const ConfigurationError& e) {
    throw ProcessError(errc::configuration, e.what());
  }
  for (;;) {
    Message m = in.read();
    if (is_terminator(m)) {
      out.write(std::move(m));
      return;
    }
    Data& d = std::get<Data>(m);
    if (Image* raw = d.payload.get_if<Image>()) {
      StencilImage wrapped;
      wrapped.buffers[0] = std::move(*raw);
      d.payload = Payload(std::move(wrapped));
    }
    stencil_apply(config, d.payload.as<StencilImage>());
    out.write(std::move(d));
  }
}

PointFn greyscale() {
  return [](const Image& src, std::size_t x, std::size_t y, std::uint8_t* out) {
    if (src.channels == 1) {
      *out = src.at(x, y);
      return;
    }
    const unsigned r = src.at(x, y, 0), g = src.at(x, y, 1), b = src.at(x, y, 2);
    *out = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  };
}

Kernel edge_kernel(std::size_t size) {
  if (size != 3 && size != 5) throw ConfigurationError("edge kernels exist for sizes 3 and 5");
  Kernel k{size, size, std::vector<double>(size * size, -1.0), 1.0, 0.0};
  k.weights[size * size / 2] = static_cast<double>(size * size - 1);
  return k;
}

Image apply_sequential(const StencilConfig& config, const Image& src) {
  stencil_validate(config);
  check_fits(config, src);
  Image dst(src.width, src.height, out_channels(config, src));
  for (std::size_t y = 0; y < src.height; ++y) compute_row(config, src, dst, y);
  return dst;
}

}  // namespace cspp
