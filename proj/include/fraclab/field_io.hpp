#pragma once

#include <filesystem>
#include <iosfwd>

#include "fraclab/field.hpp"

namespace fraclab {

// Binary layout (little-endian, no padding):
//   int64 dimension, int64 points_per_axis, float64 box_length,
//   followed by points_per_axis^dimension float64 values in row-major order.
//
// CSV layout:
//   dimension,points_per_axis,box_length      (header names)
//   <N>,<P>,<L>                               (header values)
//   value                                     (column name)
//   one value per line, row-major, 17 significant digits.

void write_field_binary(std::ostream& out, const Field& u);
Field read_field_binary(std::istream& in);

void write_field_csv(std::ostream& out, const Field& u);
Field read_field_csv(std::istream& in);

void save_field(const std::filesystem::path& path, const Field& u);
/// Chooses the format from the extension: ".csv" or anything else (binary).
Field load_field(const std::filesystem::path& path);

}  // namespace fraclab
