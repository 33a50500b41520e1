#include "fraclab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct PlainFormatter {
  std::string operator()(double x) const { return format_number(x); }
  std::string operator()(std::int64_t x) const { return std::to_string(x); }
  std::string operator()(bool x) const { return x ? "true" : "false"; }
  std::string operator()(const std::string& x) const { return x; }
};

struct JsonFormatter {
  std::string operator()(double x) const {
    // JSON has no literal for non-finite numbers.
    return std::isfinite(x) ? format_number(x) : "null";
  }
  std::string operator()(std::int64_t x) const { return std::to_string(x); }
  std::string operator()(bool x) const { return x ? "true" : "false"; }
  std::string operator()(const std::string& x) const { return "\"" + json_escape(x) + "\""; }
};

}  // namespace

FlatRecord& FlatRecord::set(std::string key, double value) {
  entries_.emplace_back(std::move(key), value);
  return *this;
}
FlatRecord& FlatRecord::set(std::string key, int value) {
  entries_.emplace_back(std::move(key), static_cast<std::int64_t>(value));
  return *this;
}
FlatRecord& FlatRecord::set(std::string key, std::int64_t value) {
  entries_.emplace_back(std::move(key), value);
  return *this;
}
FlatRecord& FlatRecord::set(std::string key, bool value) {
  entries_.emplace_back(std::move(key), value);
  return *this;
}
FlatRecord& FlatRecord::set(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}
FlatRecord& FlatRecord::set(std::string key, const char* value) {
  return set(std::move(key), std::string(value));
}

FlatRecord& FlatRecord::merge(const FlatRecord& other, const std::string& prefix) {
  for (const auto& [k, v] : other.entries_) entries_.emplace_back(prefix + k, v);
  return *this;
}

const FlatRecord::Value* FlatRecord::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

double FlatRecord::number(const std::string& key) const {
  const Value* v = find(key);
  if (v == nullptr) throw ConfigError("record has no entry '" + key + "'");
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  throw ConfigError("record entry '" + key + "' is not numeric");
}

std::string FlatRecord::to_json() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [k, v] : entries_) {
    out << (first ? "\n  " : ",\n  ") << '"' << json_escape(k) << "\": " << std::visit(JsonFormatter{}, v);
    first = false;
  }
  out << (entries_.empty() ? "}" : "\n}") << '\n';
  return out.str();
}

std::string FlatRecord::csv_header() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(entries_[i].first);
  }
  return out;
}

std::string FlatRecord::csv_row() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(std::visit(PlainFormatter{}, entries_[i].second));
  }
  return out;
}

std::string FlatRecord::to_key_value() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + std::visit(PlainFormatter{}, v) + "\n";
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<FlatRecord>& rows) {
  std::string text;
  if (!rows.empty()) {
    text += rows.front().csv_header() + "\n";
    for (const auto& r : rows) text += r.csv_row() + "\n";
  }
  write_text(path, text);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << text;
}

}  // namespace fraclab
