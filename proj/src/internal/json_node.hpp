#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "navsim/common/angles.hpp"
#include "navsim/common/types.hpp"

namespace navsim::detail {

[[noreturn]] inline void fail_at(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

/// JSON value plus the field path that leads to it, so every error names
/// the offending field.
class Node {
 public:
  Node(const nlohmann::json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const nlohmann::json& raw() const { return *j_; }

  Node child(const char* key) const {
    auto it = j_->find(key);
    if (!j_->is_object() || it == j_->end())
      fail_at(path_, std::string("missing required field '") + key + "'");
    return Node(*it, path_ + "." + key);
  }

  std::optional<Node> opt(const char* key) const {
    if (!j_->is_object()) return std::nullopt;
    auto it = j_->find(key);
    if (it == j_->end()) return std::nullopt;
    return Node(*it, path_ + "." + key);
  }

  /// Rejects fields outside the allowed set; typos in optional keys
  /// would otherwise silently fall back to defaults.
  void check_keys(std::initializer_list<const char*> allowed) const {
    if (!j_->is_object()) fail_at(path_, "expected an object");
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* k) { return it.key() == k; });
      if (!known) fail_at(path_ + "." + it.key(), "unknown field");
    }
  }

  double num() const {
    if (!j_->is_number()) fail_at(path_, "expected a number");
    return j_->get<double>();
  }

  double positive() const {
    const double v = num();
    if (!(v > 0.0)) fail_at(path_, "expected a positive number");
    return v;
  }

  int integer() const {
    if (!j_->is_number_integer()) fail_at(path_, "expected an integer");
    return j_->get<int>();
  }

  std::uint64_t uint64() const {
    if (!j_->is_number_unsigned() &&
        !(j_->is_number_integer() && j_->get<std::int64_t>() >= 0))
      fail_at(path_, "expected a non-negative integer");
    return j_->get<std::uint64_t>();
  }

  bool flag() const {
    if (!j_->is_boolean()) fail_at(path_, "expected a boolean");
    return j_->get<bool>();
  }

  std::string str() const {
    if (!j_->is_string()) fail_at(path_, "expected a string");
    return j_->get<std::string>();
  }

  Vec2 vec2() const {
    if (!j_->is_array() || j_->size() != 2 || !(*j_)[0].is_number() ||
        !(*j_)[1].is_number())
      fail_at(path_, "expected [x, y]");
    return {(*j_)[0].get<double>(), (*j_)[1].get<double>()};
  }

  Pose2D pose() const {
    if (!j_->is_array() || j_->size() != 3 ||
        !std::all_of(j_->begin(), j_->end(),
                     [](const nlohmann::json& v) { return v.is_number(); }))
      fail_at(path_, "expected [x, y, theta]");
    return {(*j_)[0].get<double>(), (*j_)[1].get<double>(),
            normalize_angle((*j_)[2].get<double>())};
  }

  std::vector<Node> items() const {
    if (!j_->is_array()) fail_at(path_, "expected an array");
    std::vector<Node> out;
    out.reserve(j_->size());
    for (size_t i = 0; i < j_->size(); ++i)
      out.emplace_back((*j_)[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  std::vector<Vec2> points(size_t min_count) const {
    std::vector<Vec2> out;
    for (const Node& n : items()) out.push_back(n.vec2());
    if (out.size() < min_count)
      fail_at(path_, "expected at least " + std::to_string(min_count) + " points");
    return out;
  }

 private:
  const nlohmann::json* j_;
  std::string path_;
};

inline double num_or(const Node& parent, const char* key, double def) {
  const auto n = parent.opt(key);
  return n ? n->num() : def;
}

inline double positive_or(const Node& parent, const char* key, double def) {
  const auto n = parent.opt(key);
  return n ? n->positive() : def;
}

/// Parses JSON text, rewriting syntax errors as "<origin>:<line>: ...".
inline nlohmann::json parse_json_text(const std::string& text,
                                      const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const size_t upto = std::min(text.size(), static_cast<size_t>(e.byte));
    const long line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace navsim::detail
