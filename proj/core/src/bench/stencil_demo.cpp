#include "cspp/bench/stencil_demo.hpp"

#include <algorithm>
#include <cmath>

#include "cspp/engines/stencil.hpp"
#include "params.hpp"

namespace cspp::bench {

StencilKernel parse_kernel(const std::string& name) {
  if (name == "grey") return StencilKernel::grey;
  if (name == "edge3") return StencilKernel::edge3;
  if (name == "edge5") return StencilKernel::edge5;
  throw std::invalid_argument("unknown kernel '" + name + "' (grey, edge3, edge5)");
}

std::string to_string(StencilKernel kernel) {
  switch (kernel) {
    case StencilKernel::grey: return "grey";
    case StencilKernel::edge3: return "edge3";
    case StencilKernel::edge5: return "edge5";
  }
  return "?";
}

Image synthetic_image(std::size_t width, std::size_t height, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Image img(width, height, 3);
  struct Disc {
    double cx, cy, r;
    std::uint8_t rgb[3];
  };
  std::vector<Disc> discs(6);
  for (auto& d : discs) {
    d.cx = rng.uniform(0, static_cast<double>(width));
    d.cy = rng.uniform(0, static_cast<double>(height));
    d.r = rng.uniform(0.05, 0.25) * static_cast<double>(std::min(width, height));
    for (auto& c : d.rgb) c = static_cast<std::uint8_t>(rng.next() & 0xff);
  }
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      int rgb[3] = {static_cast<int>(255 * x / std::max<std::size_t>(width, 1)),
                    static_cast<int>(255 * y / std::max<std::size_t>(height, 1)), 128};
      for (const auto& d : discs) {
        if (std::hypot(static_cast<double>(x) - d.cx, static_cast<double>(y) - d.cy) < d.r)
          for (int c = 0; c < 3; ++c) rgb[c] = d.rgb[c];
      }
      for (int c = 0; c < 3; ++c) {
        const int noise = static_cast<int>(rng.next() % 9) - 4;
        img.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(rgb[c] + noise, 0, 255));
      }
    }
  }
  return img;
}

namespace {

struct ImageClass {
  bool emitted = false;
};

}  // namespace

EmitDetails image_data() {
  return emit_details<ImageClass, Image>(
      [](ImageClass&, const Params&) { return StepResult::completed_ok(); }, Params::array(),
      [](ImageClass& c, Image& img, const Params& p) {
        if (c.emitted) return StepResult::normal_termination();
        c.emitted = true;
        if (!p.is_array() || p.empty()) return StepResult::error(detail::bad_params, "image create needs [inFile]");
        try {
          if (p[0].is_object()) {
            img = synthetic_image(p[0].value("width", std::size_t{256}), p[0].value("height", std::size_t{256}),
                                  p[0].value("seed", std::uint64_t{0}));
          } else {
            img = read_pnm(p[0].get<std::string>());
          }
        } catch (const std::exception& e) {
          return StepResult::error(detail::io_failure, e.what());
        }
        return StepResult::normal_continuation();
      },
      Params::array());
}

StencilConfig grey_operation() {
  StencilConfig s;
  s.function = greyscale();
  s.output_channels = 1;
  return s;
}

StencilConfig edge_operation(std::size_t size) {
  StencilConfig s;
  s.convolution = edge_kernel(size);
  return s;
}

ResultDetails image_results() {
  return result_details<ImageResult, StencilImage>(
      [](ImageResult& r, const Params& p) {
        r.path = detail::param<std::string>(p, 0).value_or("");
        return StepResult::completed_ok();
      },
      Params::array(),
      [](ImageResult& r, StencilImage& s) {
        r.image = std::move(s.buffers[s.active]);
        return StepResult::completed_ok();
      },
      [](ImageResult& r, const Params&) {
        if (r.path.empty()) return StepResult::completed_ok();
        try {
          write_pnm(r.path, r.image);
        } catch (const std::exception& e) {
          return StepResult::error(detail::io_failure, e.what());
        }
        return StepResult::completed_ok();
      });
}

void register_stencil(FunctionRegistry& registry) {
  registry.add("image.data", image_data());
  registry.add("image.grey", grey_operation());
  registry.add("image.edge3", edge_operation(3));
  registry.add("image.edge5", edge_operation(5));
  registry.add("image.results", image_results());
}

namespace {

Params source_param(const StencilDemoConfig& c) {
  if (!c.in_file.empty()) return c.in_file;
  return Params{{"width", c.width}, {"height", c.height}, {"seed", c.seed}};
}

}  // namespace

NetworkSpec stencil_spec(const StencilDemoConfig& config) {
  NetworkSpec spec;
  spec.nodes.push_back({"emit", {{"details", "image.data"}, {"createData", {source_param(config)}}}});
  spec.nodes.push_back({"stencilEngine", {{"operation", "image.grey"}, {"nodes", config.nodes}}});
  if (config.kernel != StencilKernel::grey)
    spec.nodes.push_back({"stencilEngine", {{"operation", "image." + to_string(config.kernel)}, {"nodes", config.nodes}}});
  spec.nodes.push_back({"collect", {{"details", "image.results"}, {"initData", {config.out_file}}}});
  return spec;
}

ImageResult stencil_run(const StencilDemoConfig& config, const BuildOptions& options) {
  auto report = run_spec(stencil_spec(config), options);
  return std::move(report.results.at(0)->result.as<ImageResult>());
}

ImageResult stencil_sequential(const StencilDemoConfig& config) {
  ImageResult r{config.out_file, {}};
  r.image = config.in_file.empty() ? synthetic_image(config.width, config.height, config.seed) : read_pnm(config.in_file);
  r.image = apply_sequential(grey_operation(), r.image);
  if (config.kernel == StencilKernel::edge3) r.image = apply_sequential(edge_operation(3), r.image);
  if (config.kernel == StencilKernel::edge5) r.image = apply_sequential(edge_operation(5), r.image);
  if (!r.path.empty()) write_pnm(r.path, r.image);
  return r;
}

}  // namespace cspp::bench
