#pragma once

#include "koszulkit/field.hpp"

#include <optional>
#include <vector>

namespace koszulkit {

using Vec = std::vector<Rational>;

/// Dense exact matrix over a FieldSpec. Entries are kept canonical.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(FieldSpec field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, Rational(0)) {}

  static Matrix identity(FieldSpec field, int n);
  static Matrix from_rows(FieldSpec field, const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Rational& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  void set(int r, int c, const Rational& v);

  Vec row(int r) const;
  Vec col(int c) const;
  Matrix transpose() const;

  Vec apply(const Vec& x) const;          // this * x
  Matrix multiply(const Matrix& b) const;  // this * b

  bool is_zero() const;
  bool operator==(const Matrix&) const = default;

 private:
  FieldSpec field_;
  int rows_, cols_;
  std::vector<Rational> data_;
};

struct RrefResult {
  Matrix mat;
  std::vector<int> pivots;  // pivot column per pivot row
  int rank = 0;
};

/// Unique reduced row-echelon form; deterministic.
RrefResult rref(const Matrix& m);

/// Subspace of k^ambient, held by an RREF row basis.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  Subspace(FieldSpec field, int ambient)
      : ambient_(ambient), basis_(field, 0, ambient) {}

  /// Canonicalizes the span of the given vectors.
  static Subspace span(FieldSpec field, int ambient, const std::vector<Vec>& vectors);
  static Subspace full(FieldSpec field, int ambient);

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Residue of v after eliminating pivot coordinates against the basis.
  Vec reduce(const Vec& v) const;
  /// Coordinates of v in the RREF basis; nullopt if v is outside the span.
  std::optional<Vec> coordinates(const Vec& v) const;

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

 private:
  int ambient_;
  Matrix basis_;
  std::vector<int> pivots_;
};

/// Null space of m, as a space of column vectors of length m.cols().
Subspace kernel_basis(const Matrix& m);

Subspace sum(const Subspace& u, const Subspace& w);
Subspace intersect(const Subspace& u, const Subspace& w);

/// Some x with m*x = b (free variables zero after RREF), or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

Vec zero_vec(int n);
Vec scale_vec(const Field& f, const Rational& c, const Vec& v);
void add_scaled(const Field& f, Vec& target, const Rational& c, const Vec& v);
bool is_zero_vec(const Vec& v);

}  // namespace koszulkit
