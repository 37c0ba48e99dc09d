#pragma once

// Exact arithmetic primitives: primes, p-adic valuations of rationals, and
// small invertible matrices over Q with their elementary-divisor valuations.

#include "schottky/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace schottky {

/// A machine-word prime. Construction checks primality.
class Prime {
 public:
  explicit Prime(std::uint32_t value);
  std::uint32_t value() const { return value_; }
  friend bool operator==(Prime a, Prime b) { return a.value_ == b.value_; }

 private:
  std::uint32_t value_;
};

bool is_prime(std::uint64_t n);

/// An integer valuation, or +infinity for zero.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(long v) { return Valuation(v); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Throws InputError when infinite.
  long value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);

  std::string to_string() const;

 private:
  Valuation() = default;
  explicit Valuation(long v) : value_(v) {}
  std::optional<long> value_;
};

/// Exponent of p in an integer; requires n != 0.
long vp(const BigInt& n, Prime p);
Valuation vp(const Rational& x, Prime p);

/// Dense square matrix of dimension 2 or 3 over Q with nonzero determinant.
class Matrix {
 public:
  /// Row-major entries; throws InputError if the size is wrong or the determinant is zero.
  Matrix(int dim, std::vector<Rational> entries);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(int dim);
  static Matrix diagonal(std::vector<Rational> diag);

  int dim() const { return dim_; }
  const Rational& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * dim_ + c)]; }
  const std::vector<Rational>& entries() const { return entries_; }

  Rational determinant() const;
  Rational trace() const;
  Matrix inverse() const;
  Matrix scaled(const Rational& s) const;
  Matrix pow(long k) const;

  bool is_identity() const;
  /// Nonzero scalar multiple of the identity.
  bool is_scalar() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  struct Unchecked {};
  Matrix(Unchecked, int dim, std::vector<Rational> entries)
      : dim_(dim), entries_(std::move(entries)) {}

  int dim_;
  std::vector<Rational> entries_;
};

/// Valuations e_1 <= ... <= e_dim of the elementary divisors of M over the
/// rationals with p-free denominators. Their sum is vp(det M).
std::vector<long> elementary_divisor_valuations(const Matrix& m, Prime p);

}  // namespace schottky
