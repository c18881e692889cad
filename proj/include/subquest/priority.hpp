#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "subquest/error.hpp"

namespace subquest {

/// Fixed-arity vector of finite values, ordered lexicographically.
class Priority {
 public:
  static constexpr std::size_t kMaxArity = 6;

  Priority() = default;

  Priority(std::initializer_list<double> values) { assign(values); }

  explicit Priority(std::span<const double> values) { assign(values); }

  std::size_t arity() const noexcept { return arity_; }
  double operator[](std::size_t i) const { return values_.at(i); }
  std::span<const double> values() const noexcept { return {values_.data(), arity_}; }

 private:
  template <class Range>
  void assign(const Range& values) {
    if (std::size(values) > kMaxArity) {
      throw ArityError("priority arity " + std::to_string(std::size(values)) +
                       " exceeds " + std::to_string(kMaxArity));
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw std::invalid_argument("priority values must be finite");
      values_[arity_++] = v;
    }
  }

  std::array<double, kMaxArity> values_{};
  std::size_t arity_ = 0;
};

/// Lexicographic comparison; mismatched arity is an error.
inline std::weak_ordering compare(const Priority& p, const Priority& q) {
  if (p.arity() != q.arity()) {
    throw ArityError("priority arity mismatch: " + std::to_string(p.arity()) + " vs " +
                     std::to_string(q.arity()));
  }
  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (p[i] < q[i]) return std::weak_ordering::less;
    if (p[i] > q[i]) return std::weak_ordering::greater;
  }
  return std::weak_ordering::equivalent;
}

inline std::weak_ordering operator<=>(const Priority& p, const Priority& q) {
  return compare(p, q);
}

inline bool operator==(const Priority& p, const Priority& q) {
  return compare(p, q) == std::weak_ordering::equivalent;
}

inline std::ostream& operator<<(std::ostream& os, const Priority& p) {
  os << '[';
  for (std::size_t i = 0; i < p.arity(); ++i) os << (i ? "," : "") << p[i];
  return os << ']';
}

}  // namespace subquest
