#ifndef GNSINDY_SRC_BINARY_IO_HPP
#define GNSINDY_SRC_BINARY_IO_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "gnsindy/errors.hpp"

namespace gnsindy::detail {

// Explicit little-endian encoding, independent of host byte order.

inline void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline void write_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

inline void write_f64(std::ostream& os, double v) {
  write_u64(os, std::bit_cast<std::uint64_t>(v));
}

inline std::uint32_t read_u32(std::istream& is, long offset_hint = 0) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4))
    throw DataError("unexpected end of file reading u32", offset_hint);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline std::uint64_t read_u64(std::istream& is, long offset_hint = 0) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8))
    throw DataError("unexpected end of file reading u64", offset_hint);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline double read_f64(std::istream& is, long offset_hint = 0) {
  return std::bit_cast<double>(read_u64(is, offset_hint));
}

}  // namespace gnsindy::detail

#endif  // GNSINDY_SRC_BINARY_IO_HPP
