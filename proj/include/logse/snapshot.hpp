#ifndef LOGSE_SNAPSHOT_HPP
#define LOGSE_SNAPSHOT_HPP

#include <string>
#include <vector>

#include "logse/field.hpp"

namespace logse {

// Binary snapshot format, little-endian:
//   magic "LOGSE1" (6 bytes)
//   kind: int64 (0 = complex coefficient field, 1 = real nodal field)
//   dim: int64, basis tag: int64
//   per axis: a (float64), b (float64), N (int64)
//   payload: interleaved re/im float64 coefficients (kind 0) or
//            float64 nodal values (kind 1)
void write_snapshot(const SpectralField& field, const std::string& path);
SpectralField read_snapshot(const std::string& path);

void write_real_snapshot(const std::vector<double>& nodal, const Grid& grid, Basis basis,
                         const std::string& path);
std::vector<double> read_real_snapshot(const std::string& path, Grid& grid_out, Basis& basis_out);

}  // namespace logse

#endif
