#pragma once

// Plain-text structured documents:
//
//   # comment
//   [section.sub]
//   key = value
//
// Section names may contain dots to express nesting. Keys are unique within a
// section. Floating-point values are written with 17 significant digits so a
// document round-trips bit-exactly.

#include <cstdint>
#include <string>
#include <string_view>
#include <deque>
#include <vector>

namespace disslab::keyval {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

class Section {
 public:
  Section(std::string name, int line) : name_(std::move(name)), line_(line) {}

  const std::string& name() const noexcept { return name_; }
  int line() const noexcept { return line_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  bool has(std::string_view key) const noexcept;
  const Entry* find(std::string_view key) const noexcept;
  /// Throws ParseError (with the section line) when the key is missing.
  const Entry& at(std::string_view key) const;

  std::string get_string(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  std::uint64_t get_uint(std::string_view key) const;
  bool get_bool(std::string_view key) const;

  Section& set(std::string_view key, std::string value, int line = 0);
  Section& set(std::string_view key, double value);
  Section& set(std::string_view key, std::int64_t value);
  Section& set(std::string_view key, std::uint64_t value);
  Section& set(std::string_view key, int value) { return set(key, static_cast<std::int64_t>(value)); }
  Section& set(std::string_view key, bool value);
  Section& set(std::string_view key, const char* value) { return set(key, std::string(value)); }

 private:
  std::string name_;
  int line_;
  std::vector<Entry> entries_;
};

class Document {
 public:
  /// Throws ParseError with the offending line number.
  static Document parse(std::string_view text);
  static Document load(const std::string& path);

  std::string serialize() const;
  void save(const std::string& path) const;

  Section& add(std::string name);
  const Section* find(std::string_view name) const noexcept;
  /// Throws ParseError when the section is missing.
  const Section& at(std::string_view name) const;
  const std::deque<Section>& sections() const noexcept { return sections_; }

 private:
  std::deque<Section> sections_;
};

/// "%.17g".
std::string format_double(double value);

}  // namespace disslab::keyval
