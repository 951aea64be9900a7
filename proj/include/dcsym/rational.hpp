#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcsym {

using Rational = mpq_class;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "p/q", "-p/q" or a decimal literal such as "0.25" or "1e-3"
/// into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Row-major dense matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int r, int c) { return data_[static_cast<size_t>(r * cols_ + c)]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }

  bool is_zero() const;
  bool operator==(const RationalMatrix& other) const;

  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix scaled(const Rational& s) const;

  Rational determinant() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace dcsym
