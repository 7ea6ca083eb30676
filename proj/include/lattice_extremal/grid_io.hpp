#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "function.hpp"

namespace lattice_extremal {

// Text grid format: header "LATTICE v1 N=<dim> R=<radius>", then all site
// values whitespace-separated in row-major order (last axis fastest).
// Values are written with 17 significant digits so doubles round-trip.
inline void write_grid(std::ostream& os, const LatticeFunction& u) {
  os << "LATTICE v1 N=" << u.dim() << " R=" << u.box().radius() << "\n";
  char buf[40];
  const std::int64_t ext = u.box().extent();
  for (std::int64_t i = 0; i < u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", u[i]);
    os << buf << (((i + 1) % ext == 0) ? '\n' : ' ');
  }
}

inline void write_grid_file(const std::string& path, const LatticeFunction& u) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_grid_file: cannot open " + path);
  write_grid(os, u);
  if (!os) throw std::runtime_error("write_grid_file: write failed for " + path);
}

inline LatticeFunction read_grid(std::istream& is) {
  std::string magic, version, ntok, rtok;
  if (!(is >> magic >> version >> ntok >> rtok) || magic != "LATTICE" || version != "v1" ||
      ntok.rfind("N=", 0) != 0 || rtok.rfind("R=", 0) != 0)
    throw std::runtime_error("read_grid: bad header (expected 'LATTICE v1 N=<int> R=<int>')");
  int dim = 0, radius = 0;
  try {
    dim = std::stoi(ntok.substr(2));
    radius = std::stoi(rtok.substr(2));
  } catch (const std::exception&) {
    throw std::runtime_error("read_grid: unparseable header fields");
  }
  const LatticeBox box(dim, radius);
  std::vector<double> values(static_cast<std::size_t>(box.site_count()));
  for (auto& v : values)
    if (!(is >> v)) throw std::runtime_error("read_grid: truncated value block");
  return LatticeFunction(box, std::move(values));
}

inline LatticeFunction read_grid_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_grid_file: cannot open " + path);
  return read_grid(is);
}

}  // namespace lattice_extremal
