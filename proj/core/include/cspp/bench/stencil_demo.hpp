#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "cspp/bench/common.hpp"
#include "cspp/engines/image.hpp"

namespace cspp::bench {

enum class StencilKernel { grey, edge3, edge5 };

StencilKernel parse_kernel(const std::string& name);
std::string to_string(StencilKernel kernel);

struct StencilDemoConfig {
  std::string in_file;  // PPM/PGM; a synthetic image is used when empty
  std::size_t width = 256;
  std::size_t height = 256;
  std::uint64_t seed = 3;
  std::string out_file;
  std::size_t nodes = 4;
  StencilKernel kernel = StencilKernel::edge5;
};

/// RGB test card: gradients, discs and a little noise.
Image synthetic_image(std::size_t width, std::size_t height, std::uint64_t seed);

struct ImageResult {
  std::string path;
  Image image;
};

// create [inFile | {"width": w, "height": h, "seed": s}]
EmitDetails image_data();
StencilConfig grey_operation();
StencilConfig edge_operation(std::size_t size);
// init [outFile]
ResultDetails image_results();

void register_stencil(FunctionRegistry& registry);

/// Emit -> greyscale engine -> edge engine (unless grey only) -> Collect.
NetworkSpec stencil_spec(const StencilDemoConfig& config);

ImageResult stencil_run(const StencilDemoConfig& config, const BuildOptions& options = {});
/// The same operations applied one after another on one thread.
ImageResult stencil_sequential(const StencilDemoConfig& config);

}  // namespace cspp::bench
