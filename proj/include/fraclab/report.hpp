#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fraclab {

/// Numbers in every report use 17 significant digits ("%.17g"), so identical
/// inputs give byte-identical files. Non-finite values print as "nan"/"inf".
std::string format_number(double x);

/// An ordered, flat list of named scalars. Serializes to a JSON object, to a
/// CSV header/row pair, or to "key = value" lines.
class FlatRecord {
 public:
  using Value = std::variant<double, std::int64_t, bool, std::string>;

  FlatRecord& set(std::string key, double value);
  FlatRecord& set(std::string key, int value);
  FlatRecord& set(std::string key, std::int64_t value);
  FlatRecord& set(std::string key, bool value);
  FlatRecord& set(std::string key, std::string value);
  FlatRecord& set(std::string key, const char* value);

  /// Appends every entry of other, with keys prefixed by prefix.
  FlatRecord& merge(const FlatRecord& other, const std::string& prefix = "");

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }
  const Value* find(const std::string& key) const;
  double number(const std::string& key) const;

  std::string to_json() const;
  std::string csv_header() const;
  std::string csv_row() const;
  std::string to_key_value() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

/// Writes a CSV file with the header of the first record and one row per record.
void write_csv(const std::filesystem::path& path, const std::vector<FlatRecord>& rows);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fraclab
