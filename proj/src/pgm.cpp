#include "rnmf/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace rnmf {
namespace {

class HeaderReader {
 public:
  HeaderReader(const std::string& bytes, const std::string& source) : bytes_(bytes), source_(source) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
           bytes_[pos_] != '#') {
      out.push_back(bytes_[pos_++]);
    }
    if (out.empty()) fail("unexpected end of header");
    return out;
  }

  int integer(const char* what) {
    const std::string t = token();
    for (char ch : t) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail(std::string("invalid ") + what + " '" + t + "'");
    }
    if (t.size() > 9) fail(std::string(what) + " out of range");
    return std::stoi(t);
  }

  // Raw rasters start after exactly one whitespace byte following maxval.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail("missing whitespace before raster");
    }
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ImageError(source_ + ": " + msg); }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  const std::string& source_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(const std::string& bytes, const std::string& source) {
  HeaderReader reader(bytes, source);
  if (bytes.size() < 2 || bytes[0] != 'P') reader.fail("not a PGM file");
  const std::string magic = reader.token();
  if (magic == "P3" || magic == "P6") reader.fail("colour PPM images are not supported (grayscale PGM required)");
  if (magic != "P2" && magic != "P5") reader.fail("unsupported format '" + magic + "'");

  GrayImage image;
  image.width = reader.integer("width");
  image.height = reader.integer("height");
  const int maxval = reader.integer("maxval");
  if (image.width <= 0 || image.height <= 0) reader.fail("image dimensions must be positive");
  if (maxval != 255) reader.fail("maxval " + std::to_string(maxval) + " not supported (only 255)");

  const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
  image.pixels.resize(count);
  if (magic == "P5") {
    const std::size_t offset = reader.raster_offset();
    if (bytes.size() < offset + count) reader.fail("truncated raster");
    for (std::size_t i = 0; i < count; ++i) image.pixels[i] = static_cast<std::uint8_t>(bytes[offset + i]);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = reader.integer("pixel value");
      if (v > maxval) reader.fail("pixel value exceeds maxval");
      image.pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  return image;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError(path.string() + ": cannot open file");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_pgm(bytes, path.string());
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageError(path.string() + ": cannot open for writing");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw ImageError(path.string() + ": write failed");
}

}  // namespace rnmf
