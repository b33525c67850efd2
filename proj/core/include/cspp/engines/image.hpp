#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace cspp {

/// 8-bit image, rows top to bottom, channels interleaved (1 grey, 3 RGB).
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(std::size_t w, std::size_t h, std::size_t c, std::uint8_t fill = 0)
      : width(w), height(h), channels(c), pixels(w * h * c, fill) {}

  std::uint8_t& at(std::size_t x, std::size_t y, std::size_t c = 0) { return pixels[(y * width + x) * channels + c]; }
  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c = 0) const {
    return pixels[(y * width + x) * channels + c];
  }

  bool operator==(const Image&) const = default;
};

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary PGM (P5) for one channel, PPM (P6) for three.
std::string encode_pnm(const Image& image);
Image decode_pnm(const std::string& bytes);
Image read_pnm(const std::filesystem::path& path);
void write_pnm(const std::filesystem::path& path, const Image& image);

}  // namespace cspp
