#pragma once

#include <functional>
#include <map>
#include <vector>

#include "gcx/char_ring.hpp"

namespace gcx {

// The cohomology of the configuration space of r points presented by
// generators alpha_{ij} of degree n-1 with
//   alpha_{ij} = (-1)^n alpha_{ji},  alpha_{ij}^2 = 0,
//   alpha_{ij} alpha_{jk} + alpha_{jk} alpha_{ki} + alpha_{ki} alpha_{ij} = 0.
// Basis: admissible monomials alpha_{i1 j1} ... alpha_{ik jk} with i_s < j_s
// and j_1 < ... < j_k. Serves as the dimension oracle for the graph windows.
class CohenAlgebra {
 public:
  CohenAlgebra(int n, int r) : n_(n), r_(r) {
    if (r < 1) throw std::invalid_argument("arity must be >= 1");
  }

  int n() const { return n_; }
  int arity() const { return r_; }

  using Monomial = std::vector<std::pair<int, int>>;  // factors (i, j), i < j
  using Elem = std::map<Monomial, Rat>;

  bool admissible(const Monomial& m) const {
    for (size_t s = 0; s < m.size(); ++s) {
      if (!(m[s].first < m[s].second)) return false;
      if (s + 1 < m.size() && !(m[s].second < m[s + 1].second)) return false;
    }
    return true;
  }

  // normal form of an arbitrary word in the alphas (1-based indices)
  Elem normal_form(const std::vector<std::pair<int, int>>& word, const Rat& c = 1) const {
    Elem acc;
    reduce(word, c, acc);
    return acc;
  }

  std::vector<Monomial> basis(int factors) const {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(int)> rec = [&](int min_j) {
      if ((int)cur.size() == factors) {
        out.push_back(cur);
        return;
      }
      for (int j = min_j; j <= r_; ++j)
        for (int i = 1; i < j; ++i) {
          cur.emplace_back(i, j);
          rec(j + 1);
          cur.pop_back();
        }
    };
    rec(2);
    return out;
  }

  // dimensions by cohomological degree (n-1 per factor)
  std::map<int, int> dims() const {
    std::map<int, int> out;
    for (int k = 0; k <= r_ - 1; ++k) {
      int d = (int)basis(k).size();
      if (d) out[k * (n_ - 1)] += d;
    }
    return out;
  }

  // T = sum_{i != j} d/d alpha_{ij}; identically zero for odd n, and
  // 2 sum_{i<j} d_{ij} for even n (graded derivative, alphas odd).
  Elem apply_T(const Monomial& m) const {
    Elem out;
    if (n_ % 2 == 1) return out;
    for (size_t s = 0; s < m.size(); ++s) {
      Monomial rest;
      for (size_t t = 0; t < m.size(); ++t)
        if (t != s) rest.push_back(m[t]);
      Rat add = (s % 2 == 1) ? Rat(-2) : Rat(2);
      auto it = out.find(rest);
      if (it == out.end()) out.emplace(rest, add);
      else {
        it->second += add;
        if (it->second == 0) out.erase(it);
      }
    }
    return out;
  }

  // dimensions of Grav(r) = ker T by degree (even n)
  std::map<int, int> gravity_dims() const {
    std::map<int, int> out;
    for (int k = 0; k <= r_ - 1; ++k) {
      auto src = basis(k);
      if (src.empty()) continue;
      auto dst = basis(k - 1);
      std::map<Monomial, int> index;
      for (size_t i = 0; i < dst.size(); ++i) index[dst[i]] = (int)i;
      // kernel dim = dim - rank
      std::vector<std::vector<Rat>> mat(std::max<size_t>(dst.size(), 1),
                                        std::vector<Rat>(src.size(), Rat(0)));
      for (size_t c = 0; c < src.size(); ++c)
        for (const auto& [mono, val] : apply_T(src[c]))
          mat[index.at(mono)][c] = val;
      int rank = 0;
      {
        auto m2 = mat;
        int rows = (int)m2.size(), cols = (int)m2[0].size(), row = 0;
        for (int col = 0; col < cols && row < rows; ++col) {
          int pr = -1;
          for (int r2 = row; r2 < rows; ++r2)
            if (m2[r2][col] != 0) { pr = r2; break; }
          if (pr < 0) continue;
          std::swap(m2[row], m2[pr]);
          for (int r2 = 0; r2 < rows; ++r2) {
            if (r2 == row || m2[r2][col] == 0) continue;
            Rat f = m2[r2][col] / m2[row][col];
            for (int c2 = col; c2 < cols; ++c2) m2[r2][c2] -= f * m2[row][c2];
          }
          ++row;
          ++rank;
        }
      }
      int kd = (int)src.size() - rank;
      if (kd) out[k * (n_ - 1)] += kd;
    }
    return out;
  }

 private:
  // alpha_{aj} alpha_{bj} = alpha_{ab} alpha_{bj} - alpha_{ab} alpha_{aj}
  // (a < b < j; parity-independent consequence of the three relations)
  void reduce(std::vector<std::pair<int, int>> word, Rat c, Elem& acc) const {
    if (c == 0) return;
    bool odd_alpha = (n_ - 1) % 2 == 1;  // alphas anticommute for even n
    for (auto& [i, j] : word) {
      if (i == j) return;
      if (i > j) {
        std::swap(i, j);
        if (n_ % 2 == 1) c = -c;
      }
      if (i < 1 || j > r_) throw std::invalid_argument("alpha index out of range");
    }
    // bubble sort by (second, first) tracking the graded sign
    for (size_t a = 0; a + 1 < word.size(); ++a)
      for (size_t b = 0; b + 1 < word.size() - a; ++b) {
        auto key = [](const std::pair<int, int>& p) {
          return std::make_pair(p.second, p.first);
        };
        if (key(word[b + 1]) < key(word[b])) {
          std::swap(word[b], word[b + 1]);
          if (odd_alpha) c = -c;
        }
      }
    for (size_t a = 0; a + 1 < word.size(); ++a)
      if (word[a] == word[a + 1]) return;  // square
    for (size_t s = 0; s + 1 < word.size(); ++s) {
      if (word[s].second != word[s + 1].second) continue;
      int a = word[s].first, b = word[s + 1].first, j = word[s].second;
      std::vector<std::pair<int, int>> w1(word), w2(word);
      w1[s] = {a, b};
      w1[s + 1] = {b, j};
      w2[s] = {a, b};
      w2[s + 1] = {a, j};
      reduce(w1, c, acc);
      reduce(w2, -c, acc);
      return;
    }
    Monomial m(word.begin(), word.end());
    auto it = acc.find(m);
    if (it == acc.end()) acc.emplace(m, c);
    else {
      it->second += c;
      if (it->second == 0) acc.erase(it);
    }
  }

  int n_, r_;
};

}  // namespace gcx
