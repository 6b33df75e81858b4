#include "jensen/int_linalg.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <type_traits>

namespace jensen {

namespace {

// Thrown by Checked64 arithmetic; the caller restarts with BigInt.
struct Overflow {};

// 64-bit integer whose arithmetic throws Overflow instead of wrapping. Runs
// the common case at machine speed; BigInt takes over on blow-up.
struct Checked64 {
  std::int64_t v = 0;

  Checked64() = default;
  Checked64(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend Checked64 operator+(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator-(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator*(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator/(Checked64 a, Checked64 b) {
    if (b.v == -1 && a.v == INT64_MIN) throw Overflow{};
    return a.v / b.v;
  }
  friend Checked64 operator%(Checked64 a, Checked64 b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  Checked64 operator-() const {
    if (v == INT64_MIN) throw Overflow{};
    return -v;
  }
  Checked64& operator+=(Checked64 b) { return *this = *this + b; }
  Checked64& operator-=(Checked64 b) { return *this = *this - b; }
  friend bool operator==(Checked64 a, Checked64 b) { return a.v == b.v; }
  friend bool operator<(Checked64 a, Checked64 b) { return a.v < b.v; }
};

std::uint64_t magnitude(Checked64 a) {
  return a.v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(a.v) : static_cast<std::uint64_t>(a.v);
}
int cmp_abs(Checked64 a, Checked64 b) {
  const auto x = magnitude(a), y = magnitude(b);
  return x < y ? -1 : (x > y ? 1 : 0);
}
int cmp_abs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
bool is_zero(Checked64 a) { return a.v == 0; }
bool is_zero(const BigInt& a) { return sgn(a) == 0; }
bool is_negative(Checked64 a) { return a.v < 0; }
bool is_negative(const BigInt& a) { return sgn(a) < 0; }

template <class T>
T from_big(const BigInt& x) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return x;
  } else {
    if (!x.fits_slong_p()) throw Overflow{};
    return Checked64(x.get_si());
  }
}
BigInt to_big(Checked64 x) { return BigInt(static_cast<long>(x.v)); }
BigInt to_big(const BigInt& x) { return x; }

template <class T>
struct Mat {
  std::size_t r = 0, c = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r(rows), c(cols), a(rows * cols, T(0)) {}
  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  T& operator()(std::size_t i, std::size_t j) { return a[i * c + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * c + j]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const T& q) {
    for (std::size_t k = 0; k < c; ++k) {
      if (!is_zero((*this)(j, k))) (*this)(i, k) += q * (*this)(j, k);
    }
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const T& q) {
    for (std::size_t k = 0; k < r; ++k) {
      if (!is_zero((*this)(k, j))) (*this)(k, i) += q * (*this)(k, j);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < c; ++k) (*this)(i, k) = -(*this)(i, k);
  }
};

template <class T>
IntMatrix to_int_matrix(const Mat<T>& m) {
  IntMatrix out(m.r, m.c);
  for (std::size_t i = 0; i < m.r; ++i)
    for (std::size_t j = 0; j < m.c; ++j) out.at(i, j) = to_big(m(i, j));
  return out;
}

template <class T>
Mat<T> from_int_matrix(const IntMatrix& m) {
  Mat<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = from_big<T>(m.at(i, j));
  return out;
}

// Reduces `a` to Smith form in place. Row operations are mirrored into `u`
// and column operations into `v` when those are non-null. Returns the rank.
template <class T>
std::size_t smith_in_place(Mat<T>& a, Mat<T>* u, Mat<T>* v) {
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (u) u->swap_rows(i, j);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (v) v->swap_cols(i, j);
  };
  auto add_row = [&](std::size_t i, std::size_t j, const T& q) {
    a.add_row(i, j, q);
    if (u) u->add_row(i, j, q);
  };
  auto add_col = [&](std::size_t i, std::size_t j, const T& q) {
    a.add_col(i, j, q);
    if (v) v->add_col(i, j, q);
  };

  const std::size_t rows = a.r, cols = a.c;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (is_zero(a(i, j))) continue;
        if (!best || cmp_abs(a(i, j), a(best->first, best->second)) < 0) best = {i, j};
      }
    }
    if (!best) break;
    swap_rows(t, best->first);
    swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (is_zero(a(i, t))) continue;
        const T q = a(i, t) / a(t, t);
        if (!is_zero(q)) add_row(i, t, -q);
        if (!is_zero(a(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (is_zero(a(t, j))) continue;
        const T q = a(t, j) / a(t, t);
        if (!is_zero(q)) add_col(j, t, -q);
        if (!is_zero(a(t, j))) clean = false;
      }
      if (!clean) {
        // Remainders are strictly smaller than the pivot; bring the smallest in.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (!is_zero(a(i, t)) && cmp_abs(a(i, t), a(bi, bj)) < 0) {
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!is_zero(a(t, j)) && cmp_abs(a(t, j), a(bi, bj)) < 0) {
            bi = t;
            bj = j;
          }
        }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!is_zero(a(i, j) % a(t, t))) {
            add_row(t, i, T(1));
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (is_negative(a(t, t))) {
      a.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
  return t;
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g > 0.
template <class T>
std::tuple<T, T, T> xgcd(T a, T b) {
  T s0(1), s1(0), t0(0), t1(1);
  while (!is_zero(b)) {
    const T q = a / b;
    T r = a - q * b;
    a = b;
    b = r;
    T s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    T t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (is_negative(a)) return {T(-a), T(-s0), T(-t0)};
  return {a, s0, t0};
}

// Integer row-echelon basis of a row lattice, grown one row at a time by
// unimodular 2x2 combinations against the existing pivot rows.
template <class T>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t cols) : cols_(cols), pivot_row_(cols, npos) {}

  void insert(std::vector<T> row) {
    std::size_t c = first_nonzero(row, 0);
    while (c < cols_) {
      if (pivot_row_[c] == npos) {
        if (is_negative(row[c]))
          for (std::size_t k = c; k < cols_; ++k) row[k] = -row[k];
        pivot_row_[c] = rows_.size();
        rows_.push_back(std::move(row));
        return;
      }
      std::vector<T>& p = rows_[pivot_row_[c]];
      const T a = p[c], b = row[c];
      if (is_zero(b % a)) {
        const T q = b / a;
        for (std::size_t k = c; k < cols_; ++k)
          if (!is_zero(p[k])) row[k] -= q * p[k];
      } else {
        auto [g, s, t] = xgcd(a, b);
        const T ag = a / g, bg = b / g;
        for (std::size_t k = c; k < cols_; ++k) {
          const T pk = p[k], rk = row[k];
          p[k] = s * pk + t * rk;
          row[k] = ag * rk - bg * pk;
        }
      }
      c = first_nonzero(row, c + 1);
    }
  }

  // Pivot rows in pivot-column order.
  Mat<T> matrix() const {
    Mat<T> out(rows_.size(), cols_);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (pivot_row_[c] == npos) continue;
      for (std::size_t k = 0; k < cols_; ++k) out(r, k) = rows_[pivot_row_[c]][k];
      ++r;
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t first_nonzero(const std::vector<T>& row, std::size_t from) const {
    while (from < cols_ && is_zero(row[from])) ++from;
    return from;
  }

  std::size_t cols_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::vector<T>> rows_;
};

template <class T>
LatticeSmithForm finish_lattice(const EchelonBasis<T>& basis, std::size_t cols) {
  Mat<T> e = basis.matrix();
  Mat<T> v = Mat<T>::identity(cols);
  const std::size_t rank = smith_in_place(e, static_cast<Mat<T>*>(nullptr), &v);
  LatticeSmithForm out;
  out.cols = cols;
  for (std::size_t i = 0; i < rank; ++i) out.diagonal.push_back(to_big(e(i, i)));
  out.V = to_int_matrix(v);
  return out;
}

template <class T>
LatticeSmithForm lattice_from_sparse(const SparseIntMatrix& a) {
  EchelonBasis<T> basis(a.cols);
  for (const auto& row : a.rows) {
    std::vector<T> dense(a.cols, T(0));
    for (const auto& [col, coef] : row) dense[col] = dense[col] + T(coef);
    basis.insert(std::move(dense));
  }
  return finish_lattice(basis, a.cols);
}

template <class T>
LatticeSmithForm lattice_from_dense(const IntMatrix& a) {
  EchelonBasis<T> basis(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<T> dense(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) dense[j] = from_big<T>(a.at(i, j));
    basis.insert(std::move(dense));
  }
  return finish_lattice(basis, a.cols());
}

template <class F>
auto with_fallback(F&& f) {
  try {
    return f(std::type_identity<Checked64>{});
  } catch (const Overflow&) {
    return f(std::type_identity<BigInt>{});
  }
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& x = at(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += x * rhs.at(k, j);
    }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && sgn(at(i, j)) != 0) return false;
  return true;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [col, coef] : rows[i]) out.at(i, col) += static_cast<long>(coef);
  return out;
}

std::vector<BigInt> SnfDecomposition::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(S.at(i, i));
  return out;
}

SnfDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  if (r * c > kMaxSnfEntries || r * r > kMaxSnfEntries || c * c > kMaxSnfEntries) {
    throw SizeCapExceeded("smith_normal_form: " + std::to_string(r) + "x" + std::to_string(c) +
                          " exceeds the 10^7 entry cap");
  }
  return with_fallback([&]<class T>(std::type_identity<T>) {
    Mat<T> s = from_int_matrix<T>(a);
    Mat<T> u = Mat<T>::identity(r);
    Mat<T> v = Mat<T>::identity(c);
    const std::size_t rank = smith_in_place(s, &u, &v);
    return SnfDecomposition{to_int_matrix(u), to_int_matrix(s), to_int_matrix(v), rank};
  });
}

LatticeSmithForm lattice_smith_form(const IntMatrix& a) {
  if (a.rows() * a.cols() > kMaxSnfEntries || a.cols() * a.cols() > kMaxSnfEntries) {
    throw SizeCapExceeded("lattice_smith_form: matrix exceeds the 10^7 entry cap");
  }
  return with_fallback([&]<class T>(std::type_identity<T>) { return lattice_from_dense<T>(a); });
}

LatticeSmithForm lattice_smith_form(const SparseIntMatrix& a) {
  if (a.rows.size() * a.cols > kMaxSnfEntries || a.cols * a.cols > kMaxSnfEntries) {
    throw SizeCapExceeded("lattice_smith_form: matrix exceeds the 10^7 entry cap");
  }
  return with_fallback([&]<class T>(std::type_identity<T>) { return lattice_from_sparse<T>(a); });
}

ModKernel kernel_from_smith(const LatticeSmithForm& form, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("kernel modulus must be >= 1");
  ModKernel k;
  k.modulus = d;
  k.cols = form.cols;
  const BigInt big_d = static_cast<long>(d);
  auto column_times = [&](std::size_t col, std::int64_t scale) {
    std::vector<std::int64_t> v(form.cols);
    for (std::size_t i = 0; i < form.cols; ++i) {
      BigInt x = form.V.at(i, col) * static_cast<long>(scale);
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), big_d.get_mpz_t());
      v[i] = x.get_si();
    }
    return v;
  };
  for (std::size_t i = 0; i < form.cols; ++i) {
    std::int64_t order;
    if (i < form.rank()) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), form.diagonal[i].get_mpz_t(), big_d.get_mpz_t());
      order = g.get_si();
    } else {
      order = d;
    }
    if (order == 1) continue;
    k.basis.push_back(column_times(i, d / order));
    k.orders.push_back(order);
    k.cardinality *= static_cast<long>(order);
  }
  return k;
}

ModKernel kernel_mod(const IntMatrix& a, std::int64_t d) { return kernel_from_smith(lattice_smith_form(a), d); }

ModKernel kernel_mod(const SparseIntMatrix& a, std::int64_t d) {
  return kernel_from_smith(lattice_smith_form(a), d);
}

std::vector<std::vector<std::int64_t>> ModKernel::members(std::uint64_t cap) const {
  if (cardinality > BigInt(static_cast<unsigned long>(cap))) {
    throw CapExceeded("kernel of size " + cardinality.get_str() + " exceeds enumeration cap " +
                      std::to_string(cap));
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> coords(basis.size(), 0);
  for (;;) {
    std::vector<std::int64_t> v(cols, 0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (coords[j] == 0) continue;
      for (std::size_t i = 0; i < cols; ++i) v[i] = (v[i] + coords[j] * basis[j][i]) % modulus;
    }
    out.push_back(std::move(v));
    std::size_t j = basis.size();
    for (;;) {
      if (j == 0) return out;
      --j;
      if (++coords[j] < orders[j]) break;
      coords[j] = 0;
    }
  }
}

bool in_kernel_mod(const IntMatrix& a, const std::vector<std::int64_t>& v, std::int64_t d) {
  if (v.size() != a.cols()) throw std::invalid_argument("vector length mismatch");
  const BigInt big_d = static_cast<long>(d);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a.at(i, j) * static_cast<long>(v[j]);
    if (!mpz_divisible_p(acc.get_mpz_t(), big_d.get_mpz_t())) return false;
  }
  return true;
}

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m.at(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m.at(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

}  // namespace jensen
