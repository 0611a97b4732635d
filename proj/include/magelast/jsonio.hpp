#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "magelast/common.hpp"

namespace magelast {

// Writer-side JSON value with insertion-ordered objects and 17-significant-
// digit decimals, so emitted files are byte-deterministic and doubles
// round-trip bit-exactly. Parsing is done with nlohmann::json elsewhere.
class JValue {
 public:
  using Array = std::vector<JValue>;
  using Object = std::vector<std::pair<std::string, JValue>>;

  JValue() : v_(nullptr) {}
  JValue(std::nullptr_t) : v_(nullptr) {}
  JValue(bool b) : v_(b) {}
  JValue(int i) : v_(static_cast<std::int64_t>(i)) {}
  JValue(std::int64_t i) : v_(i) {}
  JValue(std::uint64_t u) : v_(u) {}
  JValue(double d) : v_(d) {}
  JValue(const char* s) : v_(std::string(s)) {}
  JValue(std::string s) : v_(std::move(s)) {}
  JValue(Array a) : v_(std::move(a)) {}
  JValue(Object o) : v_(std::move(o)) {}

  static JValue object() { return JValue(Object{}); }
  static JValue array() { return JValue(Array{}); }

  JValue& set(std::string key, JValue val) {
    std::get<Object>(v_).emplace_back(std::move(key), std::move(val));
    return *this;
  }
  JValue& push(JValue val) {
    std::get<Array>(v_).push_back(std::move(val));
    return *this;
  }

  template <class It>
  static JValue numbers(It begin, It end) {
    JValue a = array();
    for (It it = begin; it != end; ++it) a.push(JValue(static_cast<double>(*it)));
    return a;
  }
  template <class C>
  static JValue numbers(const C& c) {
    return numbers(c.begin(), c.end());
  }

  std::string dump(int indent = 0) const {
    std::string out;
    write(out, indent, 0);
    if (indent > 0) out.push_back('\n');
    return out;
  }

  static std::string format_double(double d) {
    if (!std::isfinite(d)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
  }

 private:
  void write(std::string& out, int indent, int depth) const {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
    const std::string padc = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    if (std::holds_alternative<std::nullptr_t>(v_)) {
      out += "null";
    } else if (std::holds_alternative<bool>(v_)) {
      out += std::get<bool>(v_) ? "true" : "false";
    } else if (std::holds_alternative<std::int64_t>(v_)) {
      out += std::to_string(std::get<std::int64_t>(v_));
    } else if (std::holds_alternative<std::uint64_t>(v_)) {
      out += std::to_string(std::get<std::uint64_t>(v_));
    } else if (std::holds_alternative<double>(v_)) {
      out += format_double(std::get<double>(v_));
    } else if (std::holds_alternative<std::string>(v_)) {
      escape(out, std::get<std::string>(v_));
    } else if (std::holds_alternative<Array>(v_)) {
      const auto& a = std::get<Array>(v_);
      if (a.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      for (std::size_t i = 0; i < a.size(); ++i) {
        out += nl;
        out += pad;
        a[i].write(out, indent, depth + 1);
        if (i + 1 < a.size()) out += ",";
      }
      out += nl;
      out += padc;
      out += "]";
    } else {
      const auto& o = std::get<Object>(v_);
      if (o.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      for (std::size_t i = 0; i < o.size(); ++i) {
        out += nl;
        out += pad;
        escape(out, o[i].first);
        out += indent > 0 ? ": " : ":";
        o[i].second.write(out, indent, depth + 1);
        if (i + 1 < o.size()) out += ",";
      }
      out += nl;
      out += padc;
      out += "}";
    }
  }

  static void escape(std::string& out, std::string_view s) {
    out.push_back('"');
    for (const char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out.push_back(c);
          }
      }
    }
    out.push_back('"');
  }

  std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double, std::string, Array,
               Object>
      v_;
};

inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace magelast
