#include "cspp/bench/mandelbrot.hpp"

#include "cspp/terminals/sequential.hpp"
#include "params.hpp"

namespace cspp::bench {

std::size_t escape_count(double cr, double ci, std::size_t max_iterations) {
  double zr = 0, zi = 0;
  for (std::size_t n = 0; n < max_iterations; ++n) {
    const double t = zr * zr - zi * zi + cr;
    zi = 2 * zr * zi + ci;
    zr = t;
    if (zr * zr + zi * zi > 4.0) return n + 1;
  }
  return max_iterations;
}

void escape_colour(std::size_t count, std::size_t max_iterations, std::uint8_t* rgb) {
  if (count >= max_iterations) {
    rgb[0] = rgb[1] = rgb[2] = 0;
    return;
  }
  rgb[0] = static_cast<std::uint8_t>((count * 9) & 0xff);
  rgb[1] = static_cast<std::uint8_t>((count * 23) & 0xff);
  rgb[2] = static_cast<std::uint8_t>(255 - ((count * 5) & 0xff));
}

namespace {

struct LineClass {
  MandelbrotLine shape;
  std::size_t next = 0;
};

}  // namespace

EmitDetails mandelbrot_line() {
  auto d = emit_details<LineClass, MandelbrotLine>(
      [](LineClass& c, const Params& p) {
        auto w = detail::param<std::size_t>(p, 0);
        auto h = detail::param<std::size_t>(p, 1);
        auto delta = detail::param<double>(p, 2);
        auto iters = detail::param<std::size_t>(p, 3);
        if (!w || !h || !delta || !iters || *w == 0 || *h == 0)
          return StepResult::error(detail::bad_params, "mandelbrot init needs [width, height, pixelDelta, maxIterations]");
        c.shape.width = *w;
        c.shape.height = *h;
        c.shape.pixel_delta = *delta;
        c.shape.max_iterations = *iters;
        c.shape.centre_x = detail::param<double>(p, 4).value_or(-0.5);
        c.shape.centre_y = detail::param<double>(p, 5).value_or(0.0);
        return StepResult::completed_ok();
      },
      Params::array({350, 200, 0.01, 100}),
      [](LineClass& c, MandelbrotLine& line, const Params&) {
        if (c.next >= c.shape.height) return StepResult::normal_termination();
        line = c.shape;
        line.row = c.next++;
        return StepResult::normal_continuation();
      },
      Params::array());
  d.tag = [](const Payload& p) { return "row-" + std::to_string(p.as<MandelbrotLine>().row); };
  return d;
}

WorkerFn calc_colour() {
  return [](Payload& item, const Params&, Payload*) {
    auto& line = item.as<MandelbrotLine>();
    line.rgb.assign(line.width * 3, 0);
    const double ci = line.centre_y + (static_cast<double>(line.row) - line.height / 2.0) * line.pixel_delta;
    for (std::size_t x = 0; x < line.width; ++x) {
      const double cr = line.centre_x + (static_cast<double>(x) - line.width / 2.0) * line.pixel_delta;
      escape_colour(escape_count(cr, ci, line.max_iterations), line.max_iterations, &line.rgb[3 * x]);
    }
    return StepResult::completed_ok();
  };
}

ResultDetails mandelbrot_collect() {
  return result_details<MandelbrotImage, MandelbrotLine>(
      [](MandelbrotImage& r, const Params& p) {
        r.path = detail::param<std::string>(p, 0).value_or("");
        return StepResult::completed_ok();
      },
      Params::array(),
      [](MandelbrotImage& r, MandelbrotLine& line) {
        if (r.image.pixels.empty()) r.image = Image(line.width, line.height, 3);
        if (line.row >= r.image.height || line.rgb.size() != r.image.width * 3)
          return StepResult::error(detail::bad_params, "line does not fit the image");
        std::copy(line.rgb.begin(), line.rgb.end(), r.image.pixels.begin() + line.row * r.image.width * 3);
        return StepResult::completed_ok();
      },
      [](MandelbrotImage& r, const Params&) {
        if (r.path.empty()) return StepResult::completed_ok();
        try {
          write_pnm(r.path, r.image);
        } catch (const std::exception& e) {
          return StepResult::error(detail::io_failure, e.what());
        }
        return StepResult::completed_ok();
      });
}

void register_mandelbrot(FunctionRegistry& registry) {
  registry.add("mandelbrot.line", mandelbrot_line());
  registry.add("mandelbrot.calcColour", calc_colour());
  registry.add("mandelbrot.collect", mandelbrot_collect());
}

namespace {

Params init_param(const MandelbrotConfig& c) {
  return {c.width, c.height, c.pixel_delta, c.max_iterations, c.centre_x, c.centre_y};
}

}  // namespace

NetworkSpec mandelbrot_spec(const MandelbrotConfig& config) {
  const auto w = config.workers;
  NetworkSpec spec;
  spec.nodes = {
      {"emit", {{"details", "mandelbrot.line"}, {"initData", init_param(config)}}},
      {"spreader", {{"policy", "fanAny"}, {"destinations", w}}},
      {"group", {{"workers", w}, {"function", "mandelbrot.calcColour"}}},
      {"reducer", {{"policy", "fanOne"}, {"sources", w}}},
      {"collect", {{"details", "mandelbrot.collect"}, {"initData", {config.out_file}}}},
  };
  return spec;
}

MandelbrotImage mandelbrot_run(const MandelbrotConfig& config, const BuildOptions& options) {
  auto report = run_spec(mandelbrot_spec(config), options);
  return std::move(report.results.at(0)->result.as<MandelbrotImage>());
}

MandelbrotImage mandelbrot_sequential(const MandelbrotConfig& config) {
  auto emit = mandelbrot_line();
  emit.init_data = init_param(config);
  auto result = mandelbrot_collect();
  result.init_data = {config.out_file};
  auto outcome = run_sequential(emit, {calc_colour()}, result);
  return std::move(outcome.result.as<MandelbrotImage>());
}

}  // namespace cspp::bench
