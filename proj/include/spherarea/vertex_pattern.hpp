#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace spherarea {

/// Exact rational with a positive denominator, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend constexpr Rational operator+(Rational a, Rational b) {
    const std::int64_t g = std::gcd(a.den, b.den);
    return {a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den};
  }
  friend constexpr Rational operator-(Rational a, Rational b) {
    return a + Rational{-b.num, b.den};
  }
  friend constexpr bool operator==(Rational a, Rational b) = default;
  friend constexpr std::strong_ordering operator<=>(Rational a, Rational b) {
    return a.num * b.den <=> b.num * a.den;
  }

  constexpr int sign() const { return (num > 0) - (num < 0); }
  constexpr double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::string to_string() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Sorted multiset of the face degrees around a vertex, f_1 <= ... <= f_N.
///
/// Patterns are ordered first by length N, then lexicographically by degrees.
/// That order is the tie-break used by every ranking in the library.
class VertexPattern {
 public:
  VertexPattern() = default;

  /// Sorts `degrees`. Throws DomainError if N < 3 or some degree is < 3.
  explicit VertexPattern(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    std::sort(degrees_.begin(), degrees_.end());
    if (degrees_.size() < 3) {
      throw DomainError("vertex pattern needs at least 3 faces");
    }
    if (degrees_.front() < 3) {
      throw DomainError("face degree must be at least 3");
    }
  }
  VertexPattern(std::initializer_list<int> degrees)
      : VertexPattern(std::vector<int>(degrees)) {}

  /// Parses "3,7,29" (whitespace tolerated, order irrelevant).
  static VertexPattern parse(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view field = text.substr(pos, comma - pos);
      while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
      while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
      int value = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw DomainError("bad pattern '" + std::string(text) + "': expected comma-separated integers");
      }
      out.push_back(value);
      pos = comma + 1;
    }
    return VertexPattern(std::move(out));
  }

  const std::vector<int>& degrees() const noexcept { return degrees_; }
  std::size_t size() const noexcept { return degrees_.size(); }
  int operator[](std::size_t i) const { return degrees_[i]; }
  int max_degree() const { return degrees_.back(); }

  auto begin() const noexcept { return degrees_.begin(); }
  auto end() const noexcept { return degrees_.end(); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(degrees_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const VertexPattern&, const VertexPattern&) = default;
  friend std::strong_ordering operator<=>(const VertexPattern& a, const VertexPattern& b) {
    if (auto c = a.degrees_.size() <=> b.degrees_.size(); c != 0) return c;
    return a.degrees_ <=> b.degrees_;
  }

 private:
  std::vector<int> degrees_;
};

/// Φ = 1 − N/2 + Σ 1/f_i, exact.
inline Rational combinatorial_curvature(const VertexPattern& p) {
  Rational phi{2 - static_cast<std::int64_t>(p.size()), 2};
  for (int f : p) phi = phi + Rational{1, f};
  return phi;
}

}  // namespace spherarea
