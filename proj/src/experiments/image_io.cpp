#include "phaselift/experiments/image_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <algorithm>
#include <sstream>
#include <vector>

#include "phaselift/error.hpp"

namespace phaselift::experiments {
namespace {

struct RawPgm {
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned maxval = 0;
  std::vector<unsigned> pixels;  ///< row-major
  std::optional<double> scale;
};

constexpr std::size_t kMaxPixels = std::size_t{1} << 26;

/// Next whitespace-delimited header token, collecting "# scale" comments.
std::string next_token(std::istream& in, std::optional<double>& scale) {
  std::string token;
  while (true) {
    const int c = in.get();
    if (c == EOF) break;
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
      std::istringstream cs(comment);
      std::string key;
      double value = 0.0;
      if (cs >> key >> value && key == "scale") scale = value;
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

std::size_t parse_number(const std::string& token, const std::string& path) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) throw ImageFormatError(path + ": bad header field '" + token + "'");
  return value;
}

RawPgm read_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageFormatError("cannot open image '" + path + "'");
  RawPgm img;
  if (next_token(in, img.scale) != "P5") throw ImageFormatError(path + ": not a binary PGM (P5)");
  img.width = parse_number(next_token(in, img.scale), path);
  img.height = parse_number(next_token(in, img.scale), path);
  const std::size_t maxval = parse_number(next_token(in, img.scale), path);
  if (img.width == 0 || img.height == 0) throw ImageFormatError(path + ": zero image dimension");
  if (img.width > kMaxPixels / img.height) throw ImageFormatError(path + ": image dimensions overflow");
  if (maxval == 0 || maxval > 65535) throw ImageFormatError(path + ": maxval must lie in [1, 65535]");
  img.maxval = static_cast<unsigned>(maxval);
  const std::size_t count = img.width * img.height;
  const std::size_t bytes = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> buffer(count * bytes);
  in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
  if (static_cast<std::size_t>(in.gcount()) != buffer.size()) throw ImageFormatError(path + ": truncated pixel data");
  img.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    img.pixels[i] = bytes == 2 ? (static_cast<unsigned>(buffer[2 * i]) << 8) | buffer[2 * i + 1] : buffer[i];
    if (img.pixels[i] > img.maxval) throw ImageFormatError(path + ": pixel exceeds maxval");
  }
  return img;
}

}  // namespace

void save_pgm(const std::string& path, const ComplexSignal& image) {
  const Shape& shape = image.shape();
  const std::size_t height = shape.extent(0);
  const std::size_t width = shape.rank() == 2 ? shape.extent(1) : 1;
  const Eigen::VectorXd mag = image.data().cwiseAbs();
  const double scale = mag.size() ? mag.maxCoeff() : 0.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageFormatError("cannot write image '" + path + "'");
  std::ostringstream header;
  header.precision(17);
  header << "P5\n# scale " << scale << "\n" << width << " " << height << "\n65535\n";
  out << header.str();
  std::vector<unsigned char> buffer(2 * mag.size());
  for (Eigen::Index i = 0; i < mag.size(); ++i) {
    const double v = scale > 0.0 ? std::round(mag[i] / scale * 65535.0) : 0.0;
    const auto p = static_cast<unsigned>(std::clamp(v, 0.0, 65535.0));
    buffer[2 * static_cast<std::size_t>(i)] = static_cast<unsigned char>(p >> 8);
    buffer[2 * static_cast<std::size_t>(i) + 1] = static_cast<unsigned char>(p & 0xff);
  }
  out.write(reinterpret_cast<const char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw ImageFormatError("failed writing image '" + path + "'");
}

ComplexSignal load_pgm(const std::string& path) {
  const RawPgm raw = read_raw(path);
  const double factor = raw.scale.value_or(1.0) / static_cast<double>(raw.maxval);
  Eigen::VectorXcd data(static_cast<Eigen::Index>(raw.pixels.size()));
  for (std::size_t i = 0; i < raw.pixels.size(); ++i) data[static_cast<Eigen::Index>(i)] = static_cast<double>(raw.pixels[i]) * factor;
  return ComplexSignal(Shape(raw.height, raw.width), data);
}

ComplexSignal load_complex_image(const std::string& magnitude_path, const std::string& phase_path) {
  ComplexSignal mag = load_pgm(magnitude_path);
  const RawPgm phase = read_raw(phase_path);
  if (phase.height != mag.shape().extent(0) || phase.width != mag.shape().extent(1))
    throw ImageFormatError("phase image dimensions differ from the magnitude image");
  Eigen::VectorXcd data = mag.data();
  for (std::size_t i = 0; i < phase.pixels.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase.pixels[i]) / (static_cast<double>(phase.maxval) + 1.0);
    data[static_cast<Eigen::Index>(i)] *= std::polar(1.0, angle);
  }
  return ComplexSignal(mag.shape(), data);
}

}  // namespace phaselift::experiments
