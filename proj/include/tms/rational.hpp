#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace tms {

using Rational = boost::multiprecision::cpp_rational;

// Parses "3", "-2/7", "0.125" or "1e-3" exactly. Throws PreconditionError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Dense square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n * n)) {}

  int size() const noexcept { return n_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }

  bool operator==(const RationalMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<Rational> data_;
};

}  // namespace tms
