#include "koszulkit/matrix.hpp"

#include <stdexcept>

namespace koszulkit {

Matrix Matrix::identity(FieldSpec field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldSpec field, const std::vector<Vec>& rows, int cols) {
  Matrix m(field, static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols)
      throw std::invalid_argument("row length mismatch");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

void Matrix::set(int r, int c, const Rational& v) {
  Field f(field_);
  at(r, c) = f.canon(v);
}

Vec Matrix::row(int r) const {
  Vec v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

Vec Matrix::col(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Vec Matrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("apply: size mismatch");
  Field f(field_);
  Vec y(rows_, Rational(0));
  for (int r = 0; r < rows_; ++r) {
    Rational acc(0);
    for (int c = 0; c < cols_; ++c) {
      if (at(r, c) == 0 || x[c] == 0) continue;
      acc = f.add(acc, f.mul(at(r, c), x[c]));
    }
    y[r] = acc;
  }
  return y;
}

Matrix Matrix::multiply(const Matrix& b) const {
  if (cols_ != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  Field f(field_);
  Matrix out(field_, rows_, b.cols());
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      if (at(r, k) == 0) continue;
      for (int c = 0; c < b.cols(); ++c) {
        if (b.at(k, c) == 0) continue;
        out.at(r, c) = f.add(out.at(r, c), f.mul(at(r, k), b.at(k, c)));
      }
    }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

RrefResult rref(const Matrix& m) {
  Field f(m.field());
  RrefResult res;
  res.mat = m;
  Matrix& a = res.mat;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) a.at(r, c) = f.canon(a.at(r, c));

  int lead = 0;
  for (int col = 0; col < a.cols() && lead < a.rows(); ++col) {
    int piv = -1;
    for (int r = lead; r < a.rows(); ++r)
      if (a.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead)
      for (int c = 0; c < a.cols(); ++c) std::swap(a.at(piv, c), a.at(lead, c));
    Rational s = f.inv(a.at(lead, col));
    for (int c = col; c < a.cols(); ++c) a.at(lead, c) = f.mul(a.at(lead, c), s);
    for (int r = 0; r < a.rows(); ++r) {
      if (r == lead || a.at(r, col) == 0) continue;
      Rational k = a.at(r, col);
      for (int c = col; c < a.cols(); ++c)
        a.at(r, c) = f.sub(a.at(r, c), f.mul(k, a.at(lead, c)));
    }
    res.pivots.push_back(col);
    ++lead;
  }
  res.rank = static_cast<int>(res.pivots.size());
  return res;
}

Subspace Subspace::span(FieldSpec field, int ambient, const std::vector<Vec>& vectors) {
  Matrix m = Matrix::from_rows(field, vectors, ambient);
  RrefResult r = rref(m);
  Subspace s(field, ambient);
  s.ambient_ = ambient;
  Matrix basis(field, r.rank, ambient);
  for (int i = 0; i < r.rank; ++i)
    for (int c = 0; c < ambient; ++c) basis.at(i, c) = r.mat.at(i, c);
  s.basis_ = basis;
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::full(FieldSpec field, int ambient) {
  Subspace s(field, ambient);
  s.basis_ = Matrix::identity(field, ambient);
  s.pivots_.resize(ambient);
  for (int i = 0; i < ambient; ++i) s.pivots_[i] = i;
  return s;
}

Vec Subspace::reduce(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw std::invalid_argument("reduce: ambient mismatch");
  Field f(basis_.field());
  Vec w = v;
  for (int c = 0; c < ambient_; ++c) w[c] = f.canon(w[c]);
  for (int i = 0; i < basis_.rows(); ++i) {
    const Rational& coeff = w[pivots_[i]];
    if (coeff == 0) continue;
    Rational k = coeff;
    for (int c = 0; c < ambient_; ++c)
      if (basis_.at(i, c) != 0) w[c] = f.sub(w[c], f.mul(k, basis_.at(i, c)));
  }
  return w;
}

bool Subspace::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.basis_.rows(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec coords(basis_.rows());
  for (int i = 0; i < basis_.rows(); ++i) coords[i] = v[pivots_[i]];
  return coords;
}

Subspace kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  Field f(m.field());
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> gens;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v(m.cols(), Rational(0));
    v[c] = 1;
    for (int i = 0; i < r.rank; ++i)
      v[r.pivots[i]] = f.neg(r.mat.at(i, c));
    gens.push_back(std::move(v));
  }
  return Subspace::span(m.field(), m.cols(), gens);
}

Subspace sum(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim())
    throw std::invalid_argument("sum: ambient mismatch");
  std::vector<Vec> gens;
  for (int i = 0; i < u.dim(); ++i) gens.push_back(u.basis().row(i));
  for (int i = 0; i < w.dim(); ++i) gens.push_back(w.basis().row(i));
  return Subspace::span(u.basis().field(), u.ambient_dim(), gens);
}

Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim())
    throw std::invalid_argument("intersect: ambient mismatch");
  const FieldSpec field = u.basis().field();
  Field f(field);
  const int du = u.dim(), dw = w.dim(), n = u.ambient_dim();
  // columns = coefficients (a, b); rows = ambient coordinates; solve U^T a = W^T b
  Matrix m(field, n, du + dw);
  for (int i = 0; i < du; ++i)
    for (int c = 0; c < n; ++c) m.at(c, i) = u.basis().at(i, c);
  for (int j = 0; j < dw; ++j)
    for (int c = 0; c < n; ++c) m.at(c, du + j) = f.neg(w.basis().at(j, c));
  Subspace ker = kernel_basis(m);
  std::vector<Vec> gens;
  for (int i = 0; i < ker.dim(); ++i) {
    Vec ab = ker.basis().row(i);
    Vec x(n, Rational(0));
    for (int k = 0; k < du; ++k)
      if (ab[k] != 0) add_scaled(f, x, ab[k], u.basis().row(k));
    gens.push_back(std::move(x));
  }
  return Subspace::span(field, n, gens);
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows())
    throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  RrefResult rr = rref(aug);
  for (int p : rr.pivots)
    if (p == m.cols()) return std::nullopt;  // inconsistent
  Vec x(m.cols(), Rational(0));
  for (int i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = rr.mat.at(i, m.cols());
  return x;
}

Vec zero_vec(int n) { return Vec(n, Rational(0)); }

Vec scale_vec(const Field& f, const Rational& c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(c, v[i]);
  return out;
}

void add_scaled(const Field& f, Vec& target, const Rational& c, const Vec& v) {
  if (target.size() != v.size()) throw std::invalid_argument("add_scaled: size mismatch");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) target[i] = f.add(target[i], f.mul(c, v[i]));
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace koszulkit
