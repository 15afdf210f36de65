#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glw/errors.hpp"

namespace glw {

// Prime field F_p. Element values live in [0, p); p is validated once.
class Fp {
 public:
  explicit Fp(uint32_t p) : p_(p) {
    if (!is_prime(p)) throw InputError("field order " + std::to_string(p) + " is not prime");
  }

  uint32_t p() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint64_t s = uint64_t(a) + b;
    return s >= p_ ? uint32_t(s - p_) : uint32_t(s);
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const { return uint32_t(uint64_t(a) * b % p_); }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }

  uint32_t inv(uint32_t a) const {
    if (a == 0) throw InternalError("inverse of zero");
    return pow(a, p_ - 2);
  }

  uint32_t pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1 % p_, b = a % p_;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  // Reduces an arbitrary signed integer into [0, p).
  uint32_t reduce(int64_t v) const {
    int64_t r = v % int64_t(p_);
    if (r < 0) r += p_;
    return uint32_t(r);
  }

  friend bool operator==(const Fp&, const Fp&) = default;

  static bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  uint32_t p_;
};

// Dense row-major matrix over F_p. Zero-sized dimensions are first-class:
// a 0xN or Nx0 matrix is the identity object of block computations.
class Matrix {
 public:
  Matrix(Fp field, size_t rows, size_t cols)
      : field_(field), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

  static Matrix identity(Fp field, size_t n) {
    Matrix m(field, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1 % field.p());
    return m;
  }

  static Matrix from_rows(Fp field, const std::vector<std::vector<int64_t>>& rows) {
    size_t r = rows.size();
    size_t c = r ? rows[0].size() : 0;
    Matrix m(field, r, c);
    for (size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (size_t j = 0; j < c; ++j) m.set(i, j, field.reduce(rows[i][j]));
    }
    return m;
  }

  static Matrix column(Fp field, const std::vector<uint32_t>& v) {
    Matrix m(field, v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
  }

  const Fp& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  uint32_t at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
  void set(size_t i, size_t j, uint32_t v) { e_[i * cols_ + j] = v; }

  std::vector<uint32_t> row(size_t i) const {
    return std::vector<uint32_t>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }
  std::vector<uint32_t> col(size_t j) const {
    std::vector<uint32_t> v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  bool is_zero() const {
    for (uint32_t x : e_) if (x) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || !(a.field_ == b.field_)) throw InternalError("matrix product shape mismatch");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        uint32_t aik = a.at(i, k);
        if (!aik) continue;
        for (size_t j = 0; j < b.cols_; ++j)
          c.set(i, j, a.field_.add(c.at(i, j), a.field_.mul(aik, b.at(k, j))));
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("matrix sum shape mismatch");
    Matrix c(a.field_, a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.field_.add(a.e_[i], b.e_[i]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("matrix difference shape mismatch");
    Matrix c(a.field_, a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.field_.sub(a.e_[i], b.e_[i]);
    return c;
  }

  Matrix scaled(uint32_t k) const {
    Matrix c(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) c.e_[i] = field_.mul(e_[i], k);
    return c;
  }

  std::vector<uint32_t> apply(const std::vector<uint32_t>& x) const {
    if (x.size() != cols_) throw InternalError("matrix apply shape mismatch");
    std::vector<uint32_t> y(rows_, 0);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        y[i] = field_.add(y[i], field_.mul(at(i, j), x[j]));
    return y;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw InternalError("vstack shape mismatch");
    Matrix c(a.field_, a.rows_ + b.rows_, a.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < a.cols_; ++j) c.set(i, j, a.at(i, j));
    for (size_t i = 0; i < b.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) c.set(a.rows_ + i, j, b.at(i, j));
    return c;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw InternalError("hstack shape mismatch");
    Matrix c(a.field_, a.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
      for (size_t j = 0; j < a.cols_; ++j) c.set(i, j, a.at(i, j));
      for (size_t j = 0; j < b.cols_; ++j) c.set(i, a.cols_ + j, b.at(i, j));
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  // Lexicographic on (rows, cols, entries); total order used for canonical sorts.
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.e_ < b.e_;
  }

 private:
  Fp field_;
  size_t rows_, cols_;
  std::vector<uint32_t> e_;
};

struct RrefResult {
  Matrix mat;
  size_t rank;
  std::vector<size_t> pivots;  // pivot column per nonzero row
};

inline RrefResult rref(const Matrix& m) {
  Matrix r = m;
  const Fp& f = r.field();
  std::vector<size_t> pivots;
  size_t lead = 0;
  for (size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
    size_t piv = lead;
    while (piv < r.rows() && r.at(piv, col) == 0) ++piv;
    if (piv == r.rows()) continue;
    if (piv != lead)
      for (size_t j = 0; j < r.cols(); ++j) {
        uint32_t t = r.at(lead, j);
        r.set(lead, j, r.at(piv, j));
        r.set(piv, j, t);
      }
    uint32_t s = f.inv(r.at(lead, col));
    for (size_t j = 0; j < r.cols(); ++j) r.set(lead, j, f.mul(r.at(lead, j), s));
    for (size_t i = 0; i < r.rows(); ++i) {
      if (i == lead) continue;
      uint32_t c = r.at(i, col);
      if (!c) continue;
      for (size_t j = 0; j < r.cols(); ++j)
        r.set(i, j, f.sub(r.at(i, j), f.mul(c, r.at(lead, j))));
    }
    pivots.push_back(col);
    ++lead;
  }
  return {r, pivots.size(), pivots};
}

// Row basis of {x : a.x = 0}.
inline Matrix kernel_basis(const Matrix& a) {
  RrefResult r = rref(a);
  std::vector<char> is_pivot(a.cols(), 0);
  for (size_t c : r.pivots) is_pivot[c] = 1;
  size_t nfree = a.cols() - r.rank;
  Matrix k(a.field(), nfree, a.cols());
  size_t row = 0;
  for (size_t fcol = 0; fcol < a.cols(); ++fcol) {
    if (is_pivot[fcol]) continue;
    k.set(row, fcol, 1 % a.field().p());
    for (size_t i = 0; i < r.rank; ++i)
      k.set(row, r.pivots[i], a.field().neg(r.mat.at(i, fcol)));
    ++row;
  }
  return k;
}

// A subspace of F_p^n in canonical form: basis rows are the unique RREF
// basis with no zero rows, so equality of subspaces is equality of bases.
class Subspace {
 public:
  static Subspace zero(Fp field, size_t ambient) { return Subspace(ambient, Matrix(field, 0, ambient)); }

  static Subspace full(Fp field, size_t ambient) { return Subspace(ambient, Matrix::identity(field, ambient)); }

  // Canonicalizes the row space of `rows`.
  static Subspace span(const Matrix& rows) {
    RrefResult r = rref(rows);
    Matrix basis(rows.field(), r.rank, rows.cols());
    for (size_t i = 0; i < r.rank; ++i)
      for (size_t j = 0; j < rows.cols(); ++j) basis.set(i, j, r.mat.at(i, j));
    return Subspace(rows.cols(), basis);
  }

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const Fp& field() const { return basis_.field(); }

  // Basis vectors as columns: ambient x dim.
  Matrix basis_columns() const { return basis_.transpose(); }

  bool contains(const std::vector<uint32_t>& v) const {
    std::vector<uint32_t> w = v;
    reduce_in_place(w);
    for (uint32_t x : w) if (x) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InternalError("subspace ambient mismatch");
    for (size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  // Coordinates of v in the basis rows, if v lies in the subspace.
  std::optional<std::vector<uint32_t>> coords_of(const std::vector<uint32_t>& v) const {
    const Fp& f = field();
    std::vector<uint32_t> w = v;
    std::vector<uint32_t> coords(dim(), 0);
    for (size_t i = 0; i < dim(); ++i) {
      uint32_t c = w[pivot(i)];
      coords[i] = c;
      if (!c) continue;
      for (size_t j = 0; j < ambient_; ++j) w[j] = f.sub(w[j], f.mul(c, basis_.at(i, j)));
    }
    for (uint32_t x : w)
      if (x) return std::nullopt;
    return coords;
  }

  size_t pivot(size_t row) const {
    for (size_t j = 0; j < ambient_; ++j)
      if (basis_.at(row, j)) return j;
    throw InternalError("zero row in subspace basis");
  }

  // F^ambient -> F^(ambient-dim): coordinates modulo the subspace
  // (free coordinates after eliminating pivots).
  Matrix quotient_map() const {
    const Fp& f = field();
    std::vector<char> is_pivot(ambient_, 0);
    for (size_t i = 0; i < dim(); ++i) is_pivot[pivot(i)] = 1;
    Matrix q(f, ambient_ - dim(), ambient_);
    size_t row = 0;
    for (size_t j = 0; j < ambient_; ++j) {
      if (is_pivot[j]) continue;
      q.set(row, j, 1 % f.p());
      for (size_t i = 0; i < dim(); ++i) q.set(row, pivot(i), f.neg(basis_.at(i, j)));
      ++row;
    }
    return q;
  }

  // F^(ambient-dim) -> F^ambient, a right inverse of quotient_map().
  Matrix quotient_section() const {
    const Fp& f = field();
    std::vector<char> is_pivot(ambient_, 0);
    for (size_t i = 0; i < dim(); ++i) is_pivot[pivot(i)] = 1;
    Matrix s(f, ambient_, ambient_ - dim());
    size_t col = 0;
    for (size_t j = 0; j < ambient_; ++j) {
      if (is_pivot[j]) continue;
      s.set(j, col, 1 % f.p());
      ++col;
    }
    return s;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    return a.basis_ < b.basis_;
  }

 private:
  Subspace(size_t ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {}

  void reduce_in_place(std::vector<uint32_t>& w) const {
    const Fp& f = field();
    if (w.size() != ambient_) throw InternalError("vector/ambient mismatch");
    for (size_t i = 0; i < dim(); ++i) {
      uint32_t c = w[pivot(i)];
      if (!c) continue;
      for (size_t j = 0; j < ambient_; ++j) w[j] = f.sub(w[j], f.mul(c, basis_.at(i, j)));
    }
  }

  size_t ambient_;
  Matrix basis_;
};

inline Subspace join(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw InternalError("join ambient mismatch");
  return Subspace::span(Matrix::vstack(u.basis(), v.basis()));
}

inline Subspace meet(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw InternalError("meet ambient mismatch");
  const Fp& f = u.field();
  // x in U cap V  <=>  x = a.U = b.V; kernel of [U^T | -V^T] yields the (a, b).
  Matrix ut = u.basis().transpose();
  Matrix vt = v.basis().transpose().scaled(f.neg(1 % f.p()));
  Matrix sys = Matrix::hstack(ut, vt);
  Matrix combos = kernel_basis(sys);
  Matrix gens(f, combos.rows(), u.ambient_dim());
  for (size_t i = 0; i < combos.rows(); ++i)
    for (size_t k = 0; k < u.dim(); ++k) {
      uint32_t c = combos.at(i, k);
      if (!c) continue;
      for (size_t j = 0; j < u.ambient_dim(); ++j)
        gens.set(i, j, f.add(gens.at(i, j), f.mul(c, u.basis().at(k, j))));
    }
  return Subspace::span(gens);
}

// {x : f.x = 0} as a subspace of the column domain.
inline Subspace kernel(const Matrix& f) { return Subspace::span(kernel_basis(f)); }

// Column space of f as a subspace of the row codomain.
inline Subspace image(const Matrix& f) { return Subspace::span(f.transpose()); }

// {x : f.x in w}.
inline Subspace preimage(const Matrix& f, const Subspace& w) {
  if (f.rows() != w.ambient_dim()) throw InternalError("preimage shape mismatch");
  // Constraint matrix C with ker C = W, then the preimage is ker(C.f).
  Matrix c = kernel_basis(w.basis());
  return kernel(c * f);
}

inline Subspace image_of_subspace(const Matrix& f, const Subspace& s) {
  return Subspace::span((f * s.basis_columns()).transpose());
}

struct SolveResult {
  Matrix particular;  // a.particular = b
  Subspace kernel;    // solution set = particular + kernel
};

// Solves a.X = b columnwise; nullopt when inconsistent.
inline std::optional<SolveResult> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InternalError("solve shape mismatch");
  RrefResult r = rref(Matrix::hstack(a, b));
  for (size_t i = 0; i < r.rank; ++i)
    if (r.pivots[i] >= a.cols()) return std::nullopt;
  Matrix x(a.field(), a.cols(), b.cols());
  for (size_t i = 0; i < r.rank; ++i)
    for (size_t j = 0; j < b.cols(); ++j) x.set(r.pivots[i], j, r.mat.at(i, a.cols() + j));
  return SolveResult{x, kernel(a)};
}

inline uint64_t pow_u64_checked(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (r > cap / base) throw CapExceeded("enumeration of " + std::to_string(base) + "^" + std::to_string(exp) +
                                          " values exceeds cap " + std::to_string(cap));
    r *= base;
  }
  return r;
}

// All vectors of F_p^dim in lexicographic order (first coordinate most significant).
inline std::vector<std::vector<uint32_t>> enumerate_vectors(const Fp& f, size_t dim, uint64_t cap) {
  uint64_t n = pow_u64_checked(f.p(), dim, cap);
  std::vector<std::vector<uint32_t>> out;
  out.reserve(n);
  for (uint64_t k = 0; k < n; ++k) {
    std::vector<uint32_t> v(dim);
    uint64_t t = k;
    for (size_t i = dim; i-- > 0;) {
      v[i] = uint32_t(t % f.p());
      t /= f.p();
    }
    out.push_back(std::move(v));
  }
  return out;
}

// All elements of the subspace (coordinates run over F_p^dim lexicographically).
inline std::vector<std::vector<uint32_t>> enumerate_elements(const Subspace& s, uint64_t cap) {
  const Fp& f = s.field();
  std::vector<std::vector<uint32_t>> out;
  for (const auto& coords : enumerate_vectors(f, s.dim(), cap)) {
    std::vector<uint32_t> v(s.ambient_dim(), 0);
    for (size_t i = 0; i < s.dim(); ++i) {
      if (!coords[i]) continue;
      for (size_t j = 0; j < s.ambient_dim(); ++j)
        v[j] = f.add(v[j], f.mul(coords[i], s.basis().at(i, j)));
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace glw
