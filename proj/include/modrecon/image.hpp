#ifndef MODRECON_IMAGE_HPP
#define MODRECON_IMAGE_HPP

#include <cstdint>
#include <string>

#include "modrecon/types.hpp"

namespace modrecon {

// Binary PGM (P5, maxval 255). Pixels come back as reals in [0, 255];
// saving rounds half-to-even and clamps. Parse failures name the byte
// offset.
Mat load_pgm(const std::string& path);
void save_pgm(const Mat& image, const std::string& path);

// Deterministic grayscale test scene: smooth gradients, soft blobs and a
// few rectangles, tuned to an 8-bit range with natural-image-like contrast.
// Used by the benchmark harness when no input image is given.
Mat make_test_image(Index side, std::uint64_t seed);

}  // namespace modrecon

#endif
