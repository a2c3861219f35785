#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

// Sparse exact-rational matrix. Entries with value zero are never stored.
class SparseMatrix {
 public:
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int r, int c, const Rat& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
    if (v == 0) return;
    auto key = std::make_pair(r, c);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(key, v);
    } else {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }

  Rat get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rat(0) : it->second;
  }

  const std::map<std::pair<int, int>, Rat>& entries() const { return entries_; }

  std::vector<std::vector<Rat>> dense() const {
    std::vector<std::vector<Rat>> m(rows_, std::vector<Rat>(cols_, Rat(0)));
    for (const auto& [k, v] : entries_) m[k.first][k.second] = v;
    return m;
  }

  // Matrix Market coordinate format with exact p/q entries.
  std::string matrix_market() const {
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate rational general\n";
    os << rows_ << " " << cols_ << " " << entries_.size() << "\n";
    for (const auto& [k, v] : entries_)
      os << (k.first + 1) << " " << (k.second + 1) << " " << rat_str(v) << "\n";
    return os.str();
  }

 private:
  int rows_, cols_;
  std::map<std::pair<int, int>, Rat> entries_;
};

namespace detail {

// Row echelon over Q, first-nonzero-column pivoting. Returns pivot columns;
// matrix is left in reduced form.
inline std::vector<int> rref(std::vector<std::vector<Rat>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = (int)m.size(), cols = (int)m[0].size();
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][col] != 0) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    Rat inv = 1 / m[row][col];
    for (int c = col; c < cols; ++c) m[row][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

// Certified exact rank: fraction-free Bareiss elimination on the
// denominator-cleared matrix, deterministic first-nonzero pivoting.
inline int rank_bareiss(const SparseMatrix& mat) {
  auto m = mat.dense();
  if (m.empty() || mat.cols() == 0) return 0;
  // clear denominators row-wise (rank preserved)
  std::vector<std::vector<mpz_class>> a(mat.rows(), std::vector<mpz_class>(mat.cols()));
  for (int r = 0; r < mat.rows(); ++r) {
    mpz_class l = 1;
    for (int c = 0; c < mat.cols(); ++c) {
      mpz_class d = m[r][c].get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      l = l / g * d;
    }
    for (int c = 0; c < mat.cols(); ++c) {
      Rat v = m[r][c] * Rat(l);
      a[r][c] = v.get_num();
    }
  }
  int rows = mat.rows(), cols = mat.cols();
  mpz_class prev = 1;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pr = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col] != 0) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(a[rank], a[pr]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int c = col + 1; c < cols; ++c) {
        mpz_class t = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
        mpz_divexact(a[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

// Multi-modular fast path: rank mod several word-size primes, merged by
// maximum (rank mod p never exceeds the rational rank). Rows whose
// denominators vanish mod p force skipping that prime.
inline int rank_modular(const SparseMatrix& mat) {
  static const std::uint64_t primes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL};
  int best = 0;
  for (std::uint64_t p : primes) {
    auto dm = mat.dense();
    int rows = mat.rows(), cols = mat.cols();
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols, 0));
    bool ok = true;
    for (int r = 0; r < rows && ok; ++r)
      for (int c = 0; c < cols && ok; ++c) {
        mpz_class num = dm[r][c].get_num(), den = dm[r][c].get_den();
        mpz_class pm((unsigned long)p);
        mpz_class nm = num % pm, dn = den % pm;
        if (dn == 0) { ok = false; break; }
        if (nm < 0) nm += pm;
        std::uint64_t ni = nm.get_ui(), di = dn.get_ui();
        // modular inverse by Fermat
        std::uint64_t inv = 1, base = di, e = p - 2;
        while (e) {
          if (e & 1) inv = (__uint128_t)inv * base % p;
          base = (__uint128_t)base * base % p;
          e >>= 1;
        }
        a[r][c] = (__uint128_t)ni * inv % p;
      }
    if (!ok) continue;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
      int pr = -1;
      for (int r = rank; r < rows; ++r)
        if (a[r][col]) { pr = r; break; }
      if (pr < 0) continue;
      std::swap(a[rank], a[pr]);
      std::uint64_t inv = 1, base = a[rank][col], e = p - 2;
      while (e) {
        if (e & 1) inv = (__uint128_t)inv * base % p;
        base = (__uint128_t)base * base % p;
        e >>= 1;
      }
      for (int r = rank + 1; r < rows; ++r) {
        if (!a[r][col]) continue;
        std::uint64_t f = (__uint128_t)a[r][col] * inv % p;
        for (int c = col; c < cols; ++c) {
          std::uint64_t sub = (__uint128_t)f * a[rank][c] % p;
          a[r][c] = (a[r][c] + p - sub) % p;
        }
      }
      ++rank;
    }
    best = std::max(best, rank);
  }
  return best;
}

// Exact rank (certified path). Test builds cross-check the reduced row
// echelon rank against the fraction-free elimination on every call.
inline int rank(const SparseMatrix& mat) {
  auto m = mat.dense();
  if (m.empty() || mat.cols() == 0) return 0;
  int r = (int)detail::rref(m).size();
  assert(r == rank_bareiss(mat));
  return r;
}

// Basis of the null space, exact; empty when the kernel is trivial.
inline std::vector<std::vector<Rat>> kernel_basis(const SparseMatrix& mat) {
  int rows = mat.rows(), cols = mat.cols();
  std::vector<std::vector<Rat>> out;
  if (cols == 0) return out;
  auto m = mat.dense();
  if (m.empty()) m.assign(1, std::vector<Rat>(cols, Rat(0)));
  auto pivots = detail::rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  for (int free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[free_col] = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      v[pivots[pi]] = -m[pi][free_col];
    out.push_back(std::move(v));
  }
  (void)rows;
  return out;
}

// Any exact solution of M x = b, or nullopt when b is not in the image.
inline std::optional<std::vector<Rat>> solve_in_image(const SparseMatrix& mat,
                                                      const std::vector<Rat>& b) {
  if ((int)b.size() != mat.rows()) throw std::invalid_argument("dimension mismatch");
  int cols = mat.cols();
  auto m = mat.dense();
  if (m.empty()) m.assign(std::max(1, mat.rows()), std::vector<Rat>(cols, Rat(0)));
  for (int r = 0; r < mat.rows(); ++r) m[r].push_back(b[r]);
  if (mat.rows() == 0) return std::vector<Rat>(cols, Rat(0));
  auto pivots = detail::rref(m);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = m[pi][cols];
  return x;
}

}  // namespace gcx
