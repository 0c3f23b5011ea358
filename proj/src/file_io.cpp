#include "modrecon/file_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>

namespace modrecon {

namespace {

constexpr char kVecMagic[12] = {'M', 'O', 'D', 'R', 'E', 'C',
                                'O', 'N', '.', 'V', 'E', 'C'};
constexpr char kBitMagic[12] = {'M', 'O', 'D', 'R', 'E', 'C',
                                'O', 'N', '.', 'B', 'I', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<unsigned char, 4> b{};
  for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] =
      static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] =
      static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), 8);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw ParseError(path + ": truncated header");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i)
    v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

std::uint64_t get_u64(std::istream& in, const std::string& path) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), 8);
  if (!in) throw ParseError(path + ": truncated length field");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i)
    v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

void check_magic(std::istream& in, const char (&magic)[12],
                 const std::string& path) {
  char got[12];
  in.read(got, 12);
  if (!in || std::memcmp(got, magic, 12) != 0)
    throw ParseError(path + ": bad magic (byte offset 0)");
  const std::uint32_t version = get_u32(in, path);
  if (version != kVersion) {
    std::ostringstream msg;
    msg << path << ": unsupported version " << version;
    throw ParseError(msg.str());
  }
}

}  // namespace

void save_vector(const Vec& v, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(kVecMagic, 12);
  put_u32(out, kVersion);
  put_u64(out, static_cast<std::uint64_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) put_f64(out, v[i]);
  if (!out) throw IoError("write failed: " + path);
}

Vec load_vector(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  check_magic(in, kVecMagic, path);
  const std::uint64_t count = get_u64(in, path);
  Vec v(static_cast<Index>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t bits = get_u64(in, path);
    double d;
    std::memcpy(&d, &bits, 8);
    v[static_cast<Index>(i)] = d;
  }
  return v;
}

void save_bits(const BitMeasurements& y, const std::string& path) {
  y.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(kBitMagic, 12);
  put_u32(out, kVersion);
  put_u64(out, static_cast<std::uint64_t>(y.bits.size()));
  std::vector<unsigned char> packed((y.bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < y.bits.size(); ++i)
    if (y.bits[i]) packed[i / 8] |= static_cast<unsigned char>(1u << (i % 8));
  out.write(reinterpret_cast<const char*>(packed.data()),
            static_cast<std::streamsize>(packed.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::uint8_t> load_bits(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  check_magic(in, kBitMagic, path);
  const std::uint64_t count = get_u64(in, path);
  std::vector<unsigned char> packed((count + 7) / 8);
  in.read(reinterpret_cast<char*>(packed.data()),
          static_cast<std::streamsize>(packed.size()));
  if (static_cast<std::uint64_t>(in.gcount()) != packed.size())
    throw ParseError(path + ": truncated bit payload");
  std::vector<std::uint8_t> bits(count);
  for (std::uint64_t i = 0; i < count; ++i)
    bits[i] = (packed[i / 8] >> (i % 8)) & 1u;
  return bits;
}

std::string sidecar_path(const std::string& path) { return path + ".json"; }

}  // namespace modrecon
