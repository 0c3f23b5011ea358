#include "modrecon/image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "modrecon/rng.hpp"

namespace modrecon {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::streamoff offset,
                             const std::string& what) {
  std::ostringstream msg;
  msg << path << ": " << what << " (byte offset " << offset << ")";
  throw ParseError(msg.str());
}

// Reads one whitespace-delimited token, skipping '#' comments.
std::string next_token(std::istream& in, const std::string& path) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) continue;
    token.push_back(static_cast<char>(c));
    while ((c = in.get()) != EOF && !std::isspace(c) && c != '#')
      token.push_back(static_cast<char>(c));
    if (c == '#') in.unget();
    return token;
  }
  parse_fail(path, in.tellg() == std::streampos(-1) ? 0 : in.tellg(),
             "unexpected end of header");
}

long parse_number(const std::string& token, std::istream& in,
                  const std::string& path) {
  try {
    std::size_t used = 0;
    const long value = std::stol(token, &used);
    if (used != token.size() || value < 0) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    parse_fail(path, in.tellg(), "invalid header number '" + token + "'");
  }
}

}  // namespace

Mat load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5')
    parse_fail(path, 0, "not a binary PGM (P5) file");
  const long width = parse_number(next_token(in, path), in, path);
  const long height = parse_number(next_token(in, path), in, path);
  const long maxval = parse_number(next_token(in, path), in, path);
  if (width < 1 || height < 1)
    parse_fail(path, in.tellg(), "degenerate image dimensions");
  if (maxval != 255)
    parse_fail(path, in.tellg(),
               "unsupported maxval " + std::to_string(maxval) +
                   " (only 255 supported)");
  // Exactly one whitespace byte separates the header from the raster.
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep))
    parse_fail(path, in.tellg(), "missing raster separator");
  const std::streamoff data_start = in.tellg();
  std::vector<unsigned char> raster(static_cast<std::size_t>(width * height));
  in.read(reinterpret_cast<char*>(raster.data()),
          static_cast<std::streamsize>(raster.size()));
  if (static_cast<std::size_t>(in.gcount()) != raster.size())
    parse_fail(path, data_start + in.gcount(), "truncated raster data");
  Mat image(height, width);
  for (long r = 0; r < height; ++r)
    for (long c = 0; c < width; ++c)
      image(r, c) =
          static_cast<double>(raster[static_cast<std::size_t>(r * width + c)]);
  return image;
}

void save_pgm(const Mat& image, const std::string& path) {
  if (image.rows() < 1 || image.cols() < 1)
    throw ShapeError("save_pgm: empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "P5\n" << image.cols() << " " << image.rows() << "\n255\n";
  std::vector<unsigned char> raster(static_cast<std::size_t>(image.size()));
  for (Index r = 0; r < image.rows(); ++r)
    for (Index c = 0; c < image.cols(); ++c) {
      double v = std::nearbyint(image(r, c));  // round half to even
      v = std::min(255.0, std::max(0.0, v));
      raster[static_cast<std::size_t>(r * image.cols() + c)] =
          static_cast<unsigned char>(v);
    }
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw IoError("write failed: " + path);
}

Mat make_test_image(Index side, std::uint64_t seed) {
  if (side < 1) throw ShapeError("make_test_image: side must be >= 1");
  const double s = static_cast<double>(side);
  auto draw = [&](std::uint64_t idx, double lo, double hi) {
    return seeded_uniform(seed, stream_of(StreamDomain::harness_image, idx),
                          lo, hi);
  };
  Mat img(side, side);
  // Smooth illumination base.
  const double gx = draw(0, -40.0, 40.0);
  const double gy = draw(1, -40.0, 40.0);
  for (Index r = 0; r < side; ++r)
    for (Index c = 0; c < side; ++c)
      img(r, c) = 128.0 + gx * (static_cast<double>(c) / s - 0.5) +
                  gy * (static_cast<double>(r) / s - 0.5);
  // Soft blobs.
  const int blobs = 10;
  for (int b = 0; b < blobs; ++b) {
    const std::uint64_t base = 16 + 8 * static_cast<std::uint64_t>(b);
    const double cx = draw(base, 0.05, 0.95) * s;
    const double cy = draw(base + 1, 0.05, 0.95) * s;
    const double sigma = draw(base + 2, 0.04, 0.22) * s;
    const double amp = draw(base + 3, -95.0, 95.0);
    for (Index r = 0; r < side; ++r)
      for (Index c = 0; c < side; ++c) {
        const double dx = static_cast<double>(c) - cx;
        const double dy = static_cast<double>(r) - cy;
        img(r, c) += amp * std::exp(-(dx * dx + dy * dy) /
                                    (2.0 * sigma * sigma));
      }
  }
  // A few hard-edged rectangles so the scene is not purely smooth.
  for (int b = 0; b < 3; ++b) {
    const std::uint64_t base = 128 + 8 * static_cast<std::uint64_t>(b);
    const Index r0 = static_cast<Index>(draw(base, 0.1, 0.7) * s);
    const Index c0 = static_cast<Index>(draw(base + 1, 0.1, 0.7) * s);
    const Index h = std::max<Index>(1, static_cast<Index>(
                                           draw(base + 2, 0.08, 0.3) * s));
    const Index w = std::max<Index>(1, static_cast<Index>(
                                           draw(base + 3, 0.08, 0.3) * s));
    const double amp = draw(base + 4, -45.0, 45.0);
    for (Index r = r0; r < std::min(side, r0 + h); ++r)
      for (Index c = c0; c < std::min(side, c0 + w); ++c) img(r, c) += amp;
  }
  // Rescale into a bright 8-bit range; keep a floor away from zero so
  // normalized errors stay comparable across seeds.
  const double lo = img.minCoeff();
  const double hi = img.maxCoeff();
  const double span = std::max(hi - lo, 1e-9);
  for (Index r = 0; r < side; ++r)
    for (Index c = 0; c < side; ++c)
      img(r, c) = 20.0 + (img(r, c) - lo) / span * 225.0;
  return img;
}

}  // namespace modrecon
