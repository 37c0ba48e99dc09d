#include "schottky/exact_arith.hpp"

#include "schottky/errors.hpp"

#include <algorithm>
#include <sstream>

namespace schottky {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint32_t value) : value_(value) {
  if (!is_prime(value)) throw InputError("not a prime: " + std::to_string(value));
}

long Valuation::value() const {
  if (!value_) throw InputError("valuation is +infinity");
  return *value_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  return *a.value_ <=> *b.value_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinite();
  return Valuation::finite(*a.value_ + *b.value_);
}

std::string Valuation::to_string() const { return value_ ? std::to_string(*value_) : "+inf"; }

long vp(const BigInt& n, Prime p) {
  if (n == 0) throw InputError("vp of zero integer");
  BigInt rest;
  BigInt prime(static_cast<unsigned long>(p.value()));
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

Valuation vp(const Rational& x, Prime p) {
  if (x.is_zero()) return Valuation::infinite();
  return Valuation::finite(vp(x.num(), p) - vp(x.den(), p));
}

// ---------------------------------------------------------------------------

namespace {

Rational det_of(int dim, const std::vector<Rational>& e) {
  if (dim == 2) return e[0] * e[3] - e[1] * e[2];
  return e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
         e[2] * (e[3] * e[7] - e[4] * e[6]);
}

}  // namespace

Matrix::Matrix(int dim, std::vector<Rational> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim != 2 && dim != 3) throw InputError("matrix dimension must be 2 or 3");
  if (entries_.size() != static_cast<std::size_t>(dim * dim)) {
    throw InputError("matrix needs " + std::to_string(dim * dim) + " entries");
  }
  if (det_of(dim_, entries_).is_zero()) throw InputError("singular matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : Matrix(static_cast<int>(rows.size()), [&] {
        std::vector<Rational> e;
        for (const auto& row : rows) {
          if (row.size() != rows.size()) throw InputError("matrix must be square");
          e.insert(e.end(), row.begin(), row.end());
        }
        return e;
      }()) {}

Matrix Matrix::identity(int dim) {
  std::vector<Rational> e(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i * dim + i)] = 1;
  return Matrix(dim, std::move(e));
}

Matrix Matrix::diagonal(std::vector<Rational> diag) {
  const int dim = static_cast<int>(diag.size());
  std::vector<Rational> e(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i * dim + i)] = diag[static_cast<std::size_t>(i)];
  return Matrix(dim, std::move(e));
}

Rational Matrix::determinant() const { return det_of(dim_, entries_); }

Rational Matrix::trace() const {
  Rational t;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::inverse() const {
  const auto& e = entries_;
  const Rational det = determinant();
  std::vector<Rational> inv;
  if (dim_ == 2) {
    inv = {e[3] / det, -e[1] / det, -e[2] / det, e[0] / det};
  } else {
    inv.resize(9);
    auto at = [&](int r, int c) -> const Rational& { return e[static_cast<std::size_t>(r * 3 + c)]; };
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        // Cofactor of (c, r) gives the adjugate entry (r, c).
        const int r0 = (c + 1) % 3, r1 = (c + 2) % 3;
        const int c0 = (r + 1) % 3, c1 = (r + 2) % 3;
        inv[static_cast<std::size_t>(r * 3 + c)] = (at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0)) / det;
      }
    }
  }
  return Matrix(Unchecked{}, dim_, std::move(inv));
}

Matrix Matrix::scaled(const Rational& s) const {
  if (s.is_zero()) throw InputError("scaling by zero");
  std::vector<Rational> e = entries_;
  for (auto& x : e) x *= s;
  return Matrix(Unchecked{}, dim_, std::move(e));
}

Matrix Matrix::pow(long k) const {
  Matrix base = k < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
  Matrix result = identity(dim_);
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

bool Matrix::is_identity() const {
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      if ((*this)(r, c) != Rational(r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

bool Matrix::is_scalar() const {
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      if (r == c ? (*this)(r, c) != (*this)(0, 0) : !(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw InputError("matrix dimension mismatch");
  const int n = a.dim_;
  std::vector<Rational> e(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Rational s = a(r, 0) * b(0, c);
      for (int k = 1; k < n; ++k) s += a(r, k) * b(k, c);
      e[static_cast<std::size_t>(r * n + c)] = std::move(s);
    }
  }
  return Matrix(Matrix::Unchecked{}, n, std::move(e));
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < dim_; ++r) {
    os << (r ? ",[" : "[");
    for (int c = 0; c < dim_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::size_t Matrix::hash() const {
  std::size_t h = static_cast<std::size_t>(dim_);
  for (const auto& x : entries_) h = h * 1099511628211ULL ^ x.hash();
  return h;
}

// ---------------------------------------------------------------------------

std::vector<long> elementary_divisor_valuations(const Matrix& m, Prime p) {
  const int n = m.dim();
  std::vector<Rational> a = m.entries();
  auto at = [&](int r, int c) -> Rational& { return a[static_cast<std::size_t>(r * n + c)]; };

  std::vector<long> result;
  result.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // Pivot on an entry of minimal valuation in the trailing block; every
    // other entry divided by it is then p-integral, so the elimination below
    // is a p-unimodular row/column operation.
    int pr = -1, pc = -1;
    Valuation best = Valuation::infinite();
    for (int r = k; r < n; ++r) {
      for (int c = k; c < n; ++c) {
        const Valuation v = vp(at(r, c), p);
        if (pr < 0 || v < best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (best.is_infinite()) throw InputError("singular matrix");
    for (int c = 0; c < n; ++c) std::swap(at(k, c), at(pr, c));
    for (int r = 0; r < n; ++r) std::swap(at(r, k), at(r, pc));

    const Rational pivot = at(k, k);
    for (int r = k + 1; r < n; ++r) {
      if (at(r, k).is_zero()) continue;
      const Rational f = at(r, k) / pivot;
      for (int c = k; c < n; ++c) at(r, c) -= f * at(k, c);
    }
    // Column clearing of row k does not affect the trailing block.
    result.push_back(best.value());
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace schottky
