#include "cspp/engines/image.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace cspp {

std::string encode_pnm(const Image& image) {
  if (image.channels != 1 && image.channels != 3) throw ImageError("PNM output needs 1 or 3 channels");
  if (image.pixels.size() != image.width * image.height * image.channels) throw ImageError("pixel buffer size mismatch");
  std::string out = image.channels == 1 ? "P5\n" : "P6\n";
  out += std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return out;
}

namespace {

std::size_t header_number(const std::string& bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  std::size_t value = 0;
  const std::size_t start = pos;
  while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
    value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
    ++pos;
  }
  if (pos == start) throw ImageError("malformed PNM header");
  return value;
}

}  // namespace

Image decode_pnm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
    throw ImageError("not a binary PGM/PPM file");
  std::size_t pos = 2;
  Image image;
  image.channels = bytes[1] == '5' ? 1 : 3;
  image.width = header_number(bytes, pos);
  image.height = header_number(bytes, pos);
  if (header_number(bytes, pos) != 255) throw ImageError("only maxval 255 is supported");
  ++pos;  // single whitespace before the raster
  const std::size_t n = image.width * image.height * image.channels;
  if (bytes.size() < pos + n) throw ImageError("truncated PNM raster");
  image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                      bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return image;
}

Image read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_pnm(bytes);
}

void write_pnm(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageError("cannot write " + path.string());
  const std::string bytes = encode_pnm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace cspp
