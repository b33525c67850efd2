#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cspp/bench/common.hpp"
#include "cspp/engines/image.hpp"

namespace cspp::bench {

struct MandelbrotConfig {
  std::size_t width = 350;
  std::size_t height = 200;
  double pixel_delta = 0.01;
  std::size_t max_iterations = 100;
  std::size_t workers = 4;
  double centre_x = -0.5;
  double centre_y = 0.0;
  std::string out_file;
};

/// Iterations until |z| > 2 for z <- z^2 + c from z = 0, or max_iterations
/// when the point does not escape.
std::size_t escape_count(double cr, double ci, std::size_t max_iterations);

/// RGB for an escape count; black for points that never escaped.
void escape_colour(std::size_t count, std::size_t max_iterations, std::uint8_t* rgb);

/// One image row in flight.
struct MandelbrotLine {
  std::size_t row = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  double pixel_delta = 0.01;
  std::size_t max_iterations = 100;
  double centre_x = -0.5;
  double centre_y = 0.0;
  std::vector<std::uint8_t> rgb;  // filled by calcColour

  bool operator==(const MandelbrotLine&) const = default;
};

struct MandelbrotImage {
  std::string path;
  Image image;
};

// init [width, height, pixelDelta, maxIterations, centreX, centreY]
EmitDetails mandelbrot_line();
WorkerFn calc_colour();
// init [outFile]
ResultDetails mandelbrot_collect();

void register_mandelbrot(FunctionRegistry& registry);

/// Row farm: Emit -> OneFanAny -> AnyGroupAny -> AnyFanOne -> Collect.
NetworkSpec mandelbrot_spec(const MandelbrotConfig& config);

MandelbrotImage mandelbrot_run(const MandelbrotConfig& config, const BuildOptions& options = {});
MandelbrotImage mandelbrot_sequential(const MandelbrotConfig& config);

}  // namespace cspp::bench
