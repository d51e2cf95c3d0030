#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rnmf {

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 8-bit grayscale raster, stored row-major (pixel (r, c) at r * width + c).
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

/// Parses a PGM file. Accepts plain ("P2") and raw ("P5") encodings with
/// maxval 255; anything else throws ImageError naming the file.
GrayImage read_pgm(const std::filesystem::path& path);

/// Parses PGM bytes already in memory. `source` is only used in messages.
GrayImage parse_pgm(const std::string& bytes, const std::string& source);

/// Writes a raw ("P5") PGM.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace rnmf
