#include "movingwell/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "movingwell/errors.hpp"

namespace movingwell {

namespace {

static_assert(std::numeric_limits<double>::is_iec559);

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

template <typename T>
void put_le(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(b[i], b[sizeof(T) - 1 - i]);
    }
  }
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  is.read(reinterpret_cast<char*>(b), sizeof(T));
  if (!is) throw std::runtime_error("carpet file truncated");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(b[i], b[sizeof(T) - 1 - i]);
    }
  }
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

void write_row(std::ostream& os, double t, double x, cplx v) {
  os << t << ',' << x << ',' << v.real() << ',' << v.imag() << ','
     << std::norm(v) << '\n';
}

}  // namespace

void write_carpet_csv(const CarpetRecord& rec, const std::string& path) {
  std::ofstream out = open_out(path, false);
  out.precision(17);
  out << "t,x,re,im,density\n";
  const std::size_t nx = rec.x.size();
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    for (std::size_t j = 0; j < nx; ++j) {
      write_row(out, rec.t[i], rec.x[j], rec.amplitude[i * nx + j]);
    }
  }
}

void write_carpet_binary(const CarpetRecord& rec, const std::string& path) {
  std::ofstream out = open_out(path, true);
  out.write(kCarpetMagic, 4);
  put_le<std::uint32_t>(out, kCarpetVersion);
  put_le<std::uint64_t>(out, rec.x.size());
  put_le<std::uint64_t>(out, rec.t.size());
  for (const double d : rec.density) put_le<double>(out, d);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_carpet_meta(const CarpetRecord& rec, const std::string& path) {
  std::ofstream out = open_out(path, false);
  out.precision(17);
  out << "format=QWCP\n";
  out << "version=" << kCarpetVersion << "\n";
  out << "nx=" << rec.x.size() << "\n";
  out << "nt=" << rec.t.size() << "\n";
  out << "x_min=" << rec.x.front() << "\n";
  out << "x_max=" << rec.x.back() << "\n";
  out << "t_min=" << rec.t.front() << "\n";
  out << "t_max=" << rec.t.back() << "\n";
  out << rec.trajectory << "\n";
  out << rec.params << "\n";
  out << rec.packet << "\n";
}

CarpetBinary read_carpet_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCarpetMagic, 4) != 0) {
    throw std::runtime_error(path + ": not a QWCP carpet");
  }
  CarpetBinary out;
  out.version = get_le<std::uint32_t>(in);
  out.nx = get_le<std::uint64_t>(in);
  out.nt = get_le<std::uint64_t>(in);
  out.density.resize(out.nx * out.nt);
  for (auto& d : out.density) d = get_le<double>(in);
  return out;
}

void write_field_csv(const ComplexField& field, double t,
                     const std::string& path) {
  std::ofstream out = open_out(path, false);
  out.precision(17);
  out << "t,x,re,im,density\n";
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    write_row(out, t, field.grid.point(i), field.values[i]);
  }
}

FieldFile read_field_csv(const std::string& path, Frame frame) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,re,im", 0) != 0) {
    throw std::runtime_error(path + ": missing t,x,re,im,density header");
  }
  std::vector<double> xs;
  std::vector<cplx> vs;
  double t = 0.0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    double cols[4];
    char comma;
    row >> cols[0] >> comma >> cols[1] >> comma >> cols[2] >> comma >>
        cols[3];
    if (!row) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed row");
    }
    t = cols[0];
    xs.push_back(cols[1]);
    vs.emplace_back(cols[2], cols[3]);
  }
  if (xs.size() < 3) throw std::runtime_error(path + ": fewer than 3 rows");
  const SpatialGrid grid(xs.front(), xs.back(), xs.size());
  const double h = grid.spacing();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - grid.point(i)) > 1e-9 * h) {
      throw GridMismatch(path + ": x column is not uniformly spaced");
    }
  }
  return {ComplexField(grid, std::move(vs), frame), t};
}

}  // namespace movingwell
