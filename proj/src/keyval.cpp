#include "disslab/keyval.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "disslab/error.hpp"

namespace disslab::keyval {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  }
  return true;
}

[[noreturn]] void bad_value(const Section& section, const Entry& e, std::string_view expected) {
  throw ParseError("[" + section.name() + "] " + e.key + ": expected " + std::string(expected) +
                       ", got '" + e.value + "'",
                   e.line);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

bool Section::has(std::string_view key) const noexcept { return find(key) != nullptr; }

const Entry* Section::find(std::string_view key) const noexcept {
  for (const auto& e : entries_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const Entry& Section::at(std::string_view key) const {
  if (const Entry* e = find(key)) return *e;
  throw ParseError("[" + name_ + "] missing key '" + std::string(key) + "'", line_);
}

std::string Section::get_string(std::string_view key) const { return at(key).value; }

double Section::get_double(std::string_view key) const {
  const Entry& e = at(key);
  const std::string& v = e.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    // from_chars rejects "nan"/"inf" spellings produced by printf on some platforms.
    if (v == "nan" || v == "-nan") return std::nan("");
    if (v == "inf") return HUGE_VAL;
    if (v == "-inf") return -HUGE_VAL;
    bad_value(*this, e, "a number");
  }
  return out;
}

std::int64_t Section::get_int(std::string_view key) const {
  const Entry& e = at(key);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), out);
  if (ec != std::errc{} || ptr != e.value.data() + e.value.size()) bad_value(*this, e, "an integer");
  return out;
}

std::uint64_t Section::get_uint(std::string_view key) const {
  const Entry& e = at(key);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), out);
  if (ec != std::errc{} || ptr != e.value.data() + e.value.size()) {
    bad_value(*this, e, "a nonnegative integer");
  }
  return out;
}

bool Section::get_bool(std::string_view key) const {
  const Entry& e = at(key);
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  bad_value(*this, e, "true or false");
}

Section& Section::set(std::string_view key, std::string value, int line) {
  for (auto& e : entries_) {
    if (e.key == key) {
      e.value = std::move(value);
      return *this;
    }
  }
  entries_.push_back({std::string(key), std::move(value), line});
  return *this;
}

Section& Section::set(std::string_view key, double value) { return set(key, format_double(value)); }

Section& Section::set(std::string_view key, std::int64_t value) {
  return set(key, std::to_string(value));
}

Section& Section::set(std::string_view key, std::uint64_t value) {
  return set(key, std::to_string(value));
}

Section& Section::set(std::string_view key, bool value) {
  return set(key, std::string(value ? "true" : "false"));
}

Document Document::parse(std::string_view text) {
  Document doc;
  Section* current = nullptr;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name)) throw ParseError("invalid section name '" + std::string(name) + "'", line_no);
      if (doc.find(name)) throw ParseError("duplicate section [" + std::string(name) + "]", line_no);
      doc.sections_.emplace_back(std::string(name), line_no);
      current = &doc.sections_.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    if (!current) throw ParseError("entry outside of any [section]", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!valid_name(key)) throw ParseError("invalid key '" + std::string(key) + "'", line_no);
    if (current->has(key)) {
      throw ParseError("duplicate key '" + std::string(key) + "' in [" + current->name() + "]", line_no);
    }
    current->set(key, std::string(value), line_no);
  }
  return doc;
}

Document Document::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Document::serialize() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : sections_) {
    if (!first) out << '\n';
    first = false;
    out << '[' << s.name() << "]\n";
    for (const auto& e : s.entries()) out << e.key << " = " << e.value << '\n';
  }
  return out.str();
}

void Document::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize();
  if (!out) throw Error("failed writing '" + path + "'");
}

Section& Document::add(std::string name) {
  for (auto& s : sections_) {
    if (s.name() == name) return s;
  }
  sections_.emplace_back(std::move(name), 0);
  return sections_.back();
}

const Section* Document::find(std::string_view name) const noexcept {
  for (const auto& s : sections_) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

const Section& Document::at(std::string_view name) const {
  if (const Section* s = find(name)) return *s;
  throw ParseError("missing section [" + std::string(name) + "]", 0);
}

}  // namespace disslab::keyval
