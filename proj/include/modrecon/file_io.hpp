#ifndef MODRECON_FILE_IO_HPP
#define MODRECON_FILE_IO_HPP

#include <string>

#include "modrecon/types.hpp"

namespace modrecon {

// Vector file: 16-byte header (12-byte magic "MODRECON.VEC" + u32 LE
// version), u64 LE element count, then 64-bit LE IEEE-754 values.
void save_vector(const Vec& v, const std::string& path);
Vec load_vector(const std::string& path);

// Bit file: same header shape with magic "MODRECON.BIT", u64 LE length in
// bits, then LSB-first packed bytes. Layout metadata travels in the JSON
// sidecar.
void save_bits(const BitMeasurements& y, const std::string& path);
std::vector<std::uint8_t> load_bits(const std::string& path);

// Conventional sidecar path for a payload file.
std::string sidecar_path(const std::string& path);

}  // namespace modrecon

#endif
