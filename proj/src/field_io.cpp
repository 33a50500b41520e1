#include "fraclab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fraclab/report.hpp"

namespace fraclab {

static_assert(std::endian::native == std::endian::little, "binary field format assumes little-endian");

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ConfigError("truncated field file");
  return value;
}

}  // namespace

void write_field_binary(std::ostream& out, const Field& u) {
  const auto& g = u.grid();
  put<std::int64_t>(out, g.dimension());
  put<std::int64_t>(out, g.points_per_axis());
  put<double>(out, g.box_length());
  out.write(reinterpret_cast<const char*>(u.values().data()),
            static_cast<std::streamsize>(sizeof(double) * u.size()));
}

Field read_field_binary(std::istream& in) {
  const auto dimension = get<std::int64_t>(in);
  const auto points = get<std::int64_t>(in);
  const auto length = get<double>(in);
  auto grid = make_grid(static_cast<int>(dimension), static_cast<int>(points), length);
  Field::Vector values(grid->size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(sizeof(double) * values.size()));
  if (!in) throw ConfigError("truncated field file");
  return Field(grid, std::move(values));
}

void write_field_csv(std::ostream& out, const Field& u) {
  const auto& g = u.grid();
  out << "dimension,points_per_axis,box_length\n";
  out << g.dimension() << ',' << g.points_per_axis() << ',' << format_number(g.box_length()) << '\n';
  out << "value\n";
  for (Eigen::Index i = 0; i < u.size(); ++i) out << format_number(u[i]) << '\n';
}

Field read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "dimension,points_per_axis,box_length")
    throw ConfigError("field CSV: missing header");
  if (!std::getline(in, line)) throw ConfigError("field CSV: missing header values");
  int dimension = 0;
  int points = 0;
  double length = 0.0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream header(line);
  if (!(header >> dimension >> c1 >> points >> c2 >> length) || c1 != ',' || c2 != ',')
    throw ConfigError("field CSV: malformed header values");
  if (!std::getline(in, line) || line != "value") throw ConfigError("field CSV: missing value column");

  auto grid = make_grid(dimension, points, length);
  Field::Vector values(grid->size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::getline(in, line)) throw ConfigError("field CSV: too few values");
    values[i] = std::stod(line);
  }
  return Field(grid, std::move(values));
}

void save_field(const std::filesystem::path& path, const Field& u) {
  if (path.extension() == ".csv") {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    write_field_csv(out, u);
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    write_field_binary(out, u);
  }
}

Field load_field(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    return read_field_csv(in);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  return read_field_binary(in);
}

}  // namespace fraclab
