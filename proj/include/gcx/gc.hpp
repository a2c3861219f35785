#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcx/graph_vector.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

// Connected multigraph basis for a (v, e) cell, canonical keys, sorted.
// Enumerates lex-sorted edge sequences where each edge attaches to the
// already-used vertex range, which realizes every connected isomorphism
// class at least once; canonicalization removes duplicates and the
// zero-by-symmetry classes.
inline std::vector<std::string> enumerate_connected(int parity, int v, int e,
                                                    int min_valence = 0) {
  std::vector<std::string> out;
  if (v < 1) return out;
  if (v == 1 && e == 0) {
    OrientedGraph pt;
    pt.parity = parity;
    pt.verts = {internal_vertex()};
    auto cf = canonical_form(pt);
    if (!cf.zero && min_valence <= 0) out.push_back(cf.key);
    return out;
  }
  if (e < v - 1) return out;  // cannot be connected
  std::set<std::string> seen;
  std::vector<std::pair<int, int>> edges;
  std::function<void(int)> rec = [&](int maxseen) {
    if ((int)edges.size() == e) {
      if (maxseen != v - 1) return;
      OrientedGraph g;
      g.parity = parity;
      g.verts.assign(v, internal_vertex());
      g.edges = edges;
      if (min_valence > 0 && min_internal_valence(g) < min_valence) return;
      if (!is_connected(g)) return;
      auto cf = canonical_form(g);
      if (cf.zero) return;
      if (seen.insert(cf.key).second) out.push_back(cf.key);
      return;
    }
    std::pair<int, int> lo = edges.empty() ? std::make_pair(0, 0) : edges.back();
    int remaining = e - (int)edges.size();
    if (v - 1 - maxseen > remaining) return;  // cannot reach all vertices
    for (int a = lo.first; a <= maxseen && a < v; ++a) {
      int bstart = (a == lo.first) ? lo.second : a;
      for (int b = std::max(a, bstart); b <= std::min(maxseen + 1, v - 1); ++b) {
        if (parity == 1 && a == b) continue;  // self-loops vanish for odd n
        edges.emplace_back(a, b);
        rec(std::max(maxseen, b));
        edges.pop_back();
      }
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> gc_basis(int n, int v, int e, GcFlavor flavor) {
  int minval = flavor == GcFlavor::GC ? 3 : (flavor == GcFlavor::GC2 ? 2 : 0);
  return enumerate_connected(n % 2, v, e, minval);
}

struct WindowCell {
  int v = 0, e = 0;
  int degree = 0;
  int dim = 0;
  int hdim = 0;
};

struct WindowTable {
  std::vector<WindowCell> cells;
  std::map<int, int> h_by_degree;
  std::map<int, bool> provisional;  // degree -> contributions possible beyond window
  // degree -> representative cycles (list of (key, coefficient) lines)
  std::map<int, std::vector<std::vector<std::pair<std::string, Rat>>>> representatives;
};

namespace detail {

inline SparseMatrix delta_matrix(int n, GcFlavor flavor,
                                 const std::vector<std::string>& src,
                                 const std::vector<std::string>& dst) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < dst.size(); ++i) index[dst[i]] = (int)i;
  SparseMatrix m((int)dst.size(), (int)src.size());
  for (size_t c = 0; c < src.size(); ++c) {
    GraphVector x(n, trivial_ring());
    x.add_key(src[c], RingElem(trivial_ring(), 1));
    GraphVector dx = differential(x, flavor);
    for (const auto& [k, coeff] : dx.terms()) {
      auto it = index.find(k);
      if (it == index.end()) continue;  // outside the enumerated target span
      Rat val = coeff.terms().begin()->second;
      m.add(it->second, (int)c, val);
    }
  }
  return m;
}

}  // namespace detail

// Per-degree dimensions of ker/im within the window. Incoming differentials
// always stay inside the window, so each cell count is exact; the per-degree
// totals are flagged provisional when cells beyond the window could carry
// the same degree.
inline WindowTable cohomology_window(int n, int vmax, int emax,
                                     std::pair<int, int> degree_range, GcFlavor flavor) {
  WindowTable table;
  if (vmax < 1 || emax < 0) return table;
  long budget = 0;
  std::map<std::pair<int, int>, std::vector<std::string>> bases;
  for (int v = 1; v <= vmax + 1; ++v)
    for (int e = 0; e <= emax + 1; ++e) {
      bases[{v, e}] = gc_basis(n, v, e, flavor);
      budget += (long)bases[{v, e}].size();
      if (budget > 2000000) throw std::runtime_error("window overflow guard");
    }
  for (int v = 1; v <= vmax; ++v)
    for (int e = 0; e <= emax; ++e) {
      const auto& basis = bases[{v, e}];
      if (basis.empty()) continue;
      int deg = n * (v - 1) + (1 - n) * e;
      if (deg < degree_range.first || deg > degree_range.second) continue;
      const auto& out_basis = bases[{v + 1, e + 1}];
      SparseMatrix dout = detail::delta_matrix(n, flavor, basis, out_basis);
      int rank_out = rank(dout);
      int rank_in = 0;
      std::optional<SparseMatrix> din;
      if (v >= 2 && e >= 1) {
        const auto& in_basis = bases[{v - 1, e - 1}];
        if (!in_basis.empty()) {
          din = detail::delta_matrix(n, flavor, in_basis, basis);
          rank_in = rank(*din);
        }
      }
      WindowCell cell{v, e, deg, (int)basis.size(), (int)basis.size() - rank_out - rank_in};
      table.cells.push_back(cell);
      table.h_by_degree[deg] += cell.hdim;
      if (cell.hdim > 0) {
        // representatives: kernel vectors not in the incoming image
        auto kb = kernel_basis(dout);
        int emitted = 0;
        for (const auto& vec : kb) {
          if (emitted >= cell.hdim) break;
          bool exact = false;
          if (din) exact = solve_in_image(*din, vec).has_value();
          else exact = std::all_of(vec.begin(), vec.end(), [](const Rat& r) { return r == 0; });
          if (exact) continue;
          std::vector<std::pair<std::string, Rat>> rep;
          for (size_t i = 0; i < vec.size(); ++i)
            if (vec[i] != 0) rep.emplace_back(basis[i], vec[i]);
          table.representatives[deg].push_back(rep);
          ++emitted;
        }
      }
    }
  // provisional flags: a degree is provisional when some out-of-window cell
  // within a small horizon could carry it
  for (auto& [deg, h] : table.h_by_degree) {
    bool prov = false;
    for (int v = 1; v <= vmax + 6 && !prov; ++v)
      for (int e = 0; e <= emax + 6; ++e) {
        if (v <= vmax && e <= emax) continue;
        if (n * (v - 1) + (1 - n) * e != deg) continue;
        if (e < v - 1) continue;
        if (flavor == GcFlavor::GC && 2 * e < 3 * v) continue;
        if (flavor == GcFlavor::GC2 && e < v) continue;
        prov = true;
        break;
      }
    table.provisional[deg] = prov;
  }
  return table;
}

inline OrientedGraph loop_graph(int parity, int r) {
  OrientedGraph g;
  g.parity = parity;
  g.verts.assign(r, internal_vertex());
  for (int i = 0; i < r; ++i) g.edges.emplace_back(i, (i + 1) % r);
  return g;
}

struct LoopClassReport {
  int r = 0;
  bool nonzero = false;
  bool closed = false;
  bool exact = false;  // meaningful only when nonzero && closed
};

// Checks one loop graph L_r inside the GC^2 window: nonzero by symmetry,
// closed under the flavor differential, and non-exact against all potential
// preimages (v = r-1, e = r-1), which lie inside any window with vmax >= r.
inline LoopClassReport loop_class_check(int n, int r) {
  LoopClassReport rep;
  rep.r = r;
  auto cf = canonical_form(loop_graph(n % 2, r));
  rep.nonzero = !cf.zero;
  if (cf.zero) return rep;
  GraphVector L(n, trivial_ring());
  L.add_key(cf.key, RingElem(trivial_ring(), 1));
  rep.closed = differential(L, GcFlavor::GC2).is_zero();
  auto src = gc_basis(n, r - 1, r - 1, GcFlavor::GC2);
  auto dst = gc_basis(n, r, r, GcFlavor::GC2);
  SparseMatrix din = detail::delta_matrix(n, GcFlavor::GC2, src, dst);
  std::vector<Rat> target(dst.size(), Rat(0));
  for (size_t i = 0; i < dst.size(); ++i)
    if (dst[i] == cf.key) target[i] = 1;
  rep.exact = solve_in_image(din, target).has_value();
  return rep;
}

// Cohomology of the quotient GC_n / GC_n^{vl} in the window (n odd).
inline WindowTable very_loopy_quotient_window(int n, int vmax, int emax) {
  if (n % 2 == 0) throw std::invalid_argument("very loopy quotient needs odd n");
  WindowTable table;
  std::map<std::pair<int, int>, std::vector<std::string>> bases;
  for (int v = 1; v <= vmax + 1; ++v)
    for (int e = 0; e <= emax + 1; ++e) {
      std::vector<std::string> filtered;
      for (const auto& k : gc_basis(n, v, e, GcFlavor::GC))
        if (!is_very_loopy(gcx1_decode(k))) filtered.push_back(k);
      bases[{v, e}] = filtered;
    }
  for (int v = 1; v <= vmax; ++v)
    for (int e = 0; e <= emax; ++e) {
      const auto& basis = bases[{v, e}];
      if (basis.empty()) continue;
      int deg = n * (v - 1) + (1 - n) * e;
      SparseMatrix dout = detail::delta_matrix(n, GcFlavor::GC, basis, bases[{v + 1, e + 1}]);
      int rank_out = rank(dout);
      int rank_in = 0;
      std::optional<SparseMatrix> din;
      if (v >= 2 && e >= 1 && !bases[{v - 1, e - 1}].empty()) {
        din = detail::delta_matrix(n, GcFlavor::GC, bases[{v - 1, e - 1}], basis);
        rank_in = rank(*din);
      }
      WindowCell cell{v, e, deg, (int)basis.size(), (int)basis.size() - rank_out - rank_in};
      table.cells.push_back(cell);
      table.h_by_degree[deg] += cell.hdim;
      if (cell.hdim > 0) {
        auto kb = kernel_basis(dout);
        int emitted = 0;
        for (const auto& vec : kb) {
          if (emitted >= cell.hdim) break;
          bool exact = din ? solve_in_image(*din, vec).has_value()
                           : std::all_of(vec.begin(), vec.end(),
                                         [](const Rat& r) { return r == 0; });
          if (exact) continue;
          std::vector<std::pair<std::string, Rat>> rep;
          for (size_t i = 0; i < vec.size(); ++i)
            if (vec[i] != 0) rep.emplace_back(basis[i], vec[i]);
          table.representatives[deg].push_back(rep);
          ++emitted;
        }
      }
    }
  return table;
}

}  // namespace gcx
