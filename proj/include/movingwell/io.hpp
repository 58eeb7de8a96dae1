#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "movingwell/grid.hpp"
#include "movingwell/tdse.hpp"

namespace movingwell {

inline constexpr char kCarpetMagic[4] = {'Q', 'W', 'C', 'P'};
inline constexpr std::uint32_t kCarpetVersion = 1;

/// Header `t,x,re,im,density`, one row per (t, x) sample, 17 significant
/// digits.
void write_carpet_csv(const CarpetRecord& rec, const std::string& path);

/// QWCP, u32 version, u64 nx, u64 nt, then nt*nx float64 densities, all
/// little-endian.
void write_carpet_binary(const CarpetRecord& rec, const std::string& path);

/// Plain-text sidecar with grid extents and the trajectory echo.
void write_carpet_meta(const CarpetRecord& rec, const std::string& path);

struct CarpetBinary {
  std::uint32_t version = 0;
  std::uint64_t nx = 0;
  std::uint64_t nt = 0;
  std::vector<double> density;
};

CarpetBinary read_carpet_binary(const std::string& path);

/// Single field at time t in the carpet CSV layout. For comoving fields the
/// x column holds y.
void write_field_csv(const ComplexField& field, double t,
                     const std::string& path);

struct FieldFile {
  ComplexField field;
  double t;
};

/// Reads a file written by write_field_csv. The x column must be uniformly
/// spaced.
FieldFile read_field_csv(const std::string& path, Frame frame);

}  // namespace movingwell
