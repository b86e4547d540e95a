#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace needlab {

/// A variable or label name: a base string plus a generation index.
/// Names read from source have generation 0; generated names render as
/// `base%N`, which the parser never accepts.
struct Name {
  std::string base;
  std::uint32_t gen = 0;

  Name() = default;
  Name(std::string b, std::uint32_t g = 0) : base(std::move(b)), gen(g) {}
  Name(const char* b) : base(b) {}

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;

  std::string str() const {
    return gen == 0 ? base : base + "%" + std::to_string(gen);
  }
};

/// Issues names that never collide with each other or with any name whose
/// generation is below the starting counter. One supply per evaluation
/// session; it is a plain value and is never shared between threads.
class NameSupply {
 public:
  explicit NameSupply(std::uint32_t first = 1) : next_(first == 0 ? 1 : first) {}

  Name fresh(const std::string& base) { return Name{base, next_++}; }
  Name fresh(const Name& like) { return fresh(like.base); }

  std::uint32_t peek() const { return next_; }

  /// Never issue anything at or below `gen` again.
  void reserve_above(std::uint32_t gen) {
    if (gen >= next_) next_ = gen + 1;
  }

 private:
  std::uint32_t next_;
};

}  // namespace needlab

template <>
struct std::hash<needlab::Name> {
  std::size_t operator()(const needlab::Name& n) const noexcept {
    return std::hash<std::string>{}(n.base) * 31u + n.gen;
  }
};
