#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

enum class VertexKind { Internal, External, Baseline };

struct Vertex {
  VertexKind kind = VertexKind::Internal;
  int label = 0;  // external label, 1-based; 0 otherwise
  bool operator==(const Vertex&) const = default;
};

inline Vertex internal_vertex() { return {VertexKind::Internal, 0}; }
inline Vertex external_vertex(int label) { return {VertexKind::External, label}; }
inline Vertex baseline_vertex() { return {VertexKind::Baseline, 0}; }

// A finite graph with parity-dependent orientation data.
//   parity 0 (n even): the edge sequence order is the orientation; pair
//     order inside an edge and the vertex roster order carry no sign.
//   parity 1 (n odd): the roster order of non-external vertices is the
//     orientation, and each edge's written pair order is its direction;
//     the edge sequence order carries no sign.
// External vertices never enter orientation orderings; their labels are fixed.
struct OrientedGraph {
  int parity = 0;  // n mod 2
  std::vector<Vertex> verts;
  std::vector<std::pair<int, int>> edges;  // 0-based endpoints

  int num_vertices() const { return (int)verts.size(); }
  int num_edges() const { return (int)edges.size(); }

  int count_kind(VertexKind k) const {
    int c = 0;
    for (const auto& v : verts)
      if (v.kind == k) ++c;
    return c;
  }

  void check_well_formed() const {
    for (auto [a, b] : edges)
      if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices())
        throw std::invalid_argument("edge endpoint out of range");
  }
};

struct CanonicalForm {
  std::string key;  // GCX1 encoding of the canonical representative
  int sign = 1;
  bool zero = false;
};

// --- GCX1 bit-exact textual encoding ------------------------------------
// GCX1 p=<0|1> v=<count> kinds=<I|E<k>|B,...> edges=<(a,b);(c,d);...>
// 1-based vertex indices. For even parity edges are listed in orientation
// order with a<b inside each pair; for odd parity edges are listed
// lexicographically and the written pair order is the direction.

inline std::string gcx1_encode(const OrientedGraph& g) {
  std::ostringstream os;
  os << "GCX1 p=" << g.parity << " v=" << g.num_vertices() << " kinds=";
  for (int i = 0; i < g.num_vertices(); ++i) {
    if (i) os << ",";
    switch (g.verts[i].kind) {
      case VertexKind::Internal: os << "I"; break;
      case VertexKind::External: os << "E" << g.verts[i].label; break;
      case VertexKind::Baseline: os << "B"; break;
    }
  }
  os << " edges=";
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (i) os << ";";
    os << "(" << g.edges[i].first + 1 << "," << g.edges[i].second + 1 << ")";
  }
  return os.str();
}

inline OrientedGraph gcx1_decode(const std::string& s) {
  OrientedGraph g;
  std::istringstream is(s);
  std::string tok;
  is >> tok;
  if (tok != "GCX1") throw std::invalid_argument("not a GCX1 line: " + s);
  int vcount = -1;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad GCX1 field: " + tok);
    std::string k = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (k == "p") {
      g.parity = std::stoi(val);
    } else if (k == "v") {
      vcount = std::stoi(val);
    } else if (k == "kinds") {
      std::istringstream ks(val);
      std::string item;
      while (std::getline(ks, item, ',')) {
        if (item == "I") g.verts.push_back(internal_vertex());
        else if (item == "B") g.verts.push_back(baseline_vertex());
        else if (!item.empty() && item[0] == 'E')
          g.verts.push_back(external_vertex(std::stoi(item.substr(1))));
        else throw std::invalid_argument("bad vertex kind: " + item);
      }
    } else if (k == "edges") {
      std::istringstream es(val);
      std::string item;
      while (std::getline(es, item, ';')) {
        if (item.empty()) continue;
        int a, b;
        if (sscanf(item.c_str(), "(%d,%d)", &a, &b) != 2)
          throw std::invalid_argument("bad edge: " + item);
        g.edges.emplace_back(a - 1, b - 1);
      }
    }
  }
  if (vcount != g.num_vertices()) throw std::invalid_argument("GCX1 vertex count mismatch");
  g.check_well_formed();
  return g;
}

namespace detail {

inline int perm_sign(const std::vector<int>& perm) {
  int n = (int)perm.size();
  std::vector<bool> seen(n, false);
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) { seen[j] = true; j = perm[j]; ++len; }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Sorting permutation sign via merge-count (stable on ties).
template <typename T>
int sort_sign(std::vector<T>& v) {
  int n = (int)v.size();
  long inversions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (v[j] < v[i]) ++inversions;
  std::stable_sort(v.begin(), v.end());
  return inversions % 2 == 0 ? 1 : -1;
}

struct CanonCandidate {
  std::string enc;
  int sign;
};

}  // namespace detail

// Canonical form with the orientation sign rules of the ambient parity:
// even n: ordered edges (odd), undirected edges, unordered vertices;
// odd n: ordered non-external vertices (odd), directed edges (flip = -1),
// unordered edges. A graph admitting a sign -1 automorphism is zero.
inline CanonicalForm canonical_form(const OrientedGraph& g) {
  g.check_well_formed();
  const int nv = g.num_vertices();

  if (g.parity == 1) {
    // a self-edge reversal is an automorphism of sign -1
    for (auto [a, b] : g.edges)
      if (a == b) return {"", 1, true};
  } else {
    // parallel edges can be transposed, sign -1 on the edge order
    std::vector<std::pair<int, int>> norm;
    norm.reserve(g.edges.size());
    for (auto [a, b] : g.edges) norm.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(norm.begin(), norm.end());
    if (std::adjacent_find(norm.begin(), norm.end()) != norm.end()) return {"", 1, true};
  }

  // vertex classes refined by (kind, label, valence, loops, neighbor profile)
  std::vector<int> valence(nv, 0), loops(nv, 0);
  for (auto [a, b] : g.edges) {
    ++valence[a];
    ++valence[b];
    if (a == b) ++loops[a];
  }
  std::vector<long> cls(nv);
  auto kind_code = [&](int i) {
    const Vertex& v = g.verts[i];
    return (long)v.kind * 1000000 + v.label * 10000 + valence[i] * 100 + loops[i];
  };
  for (int i = 0; i < nv; ++i) cls[i] = kind_code(i);
  for (int round = 0; round < 2; ++round) {
    std::vector<long> next(nv);
    for (int i = 0; i < nv; ++i) {
      std::vector<long> nb;
      for (auto [a, b] : g.edges) {
        if (a == i) nb.push_back(cls[b]);
        if (b == i) nb.push_back(cls[a]);
      }
      std::sort(nb.begin(), nb.end());
      long h = cls[i];
      for (long x : nb) h = h * 1000003 + x % 1000003;
      next[i] = h;
    }
    cls = next;
  }
  // group vertex indices by class; external vertices are pinned singletons
  std::map<std::pair<long, long>, std::vector<int>> groups;
  for (int i = 0; i < nv; ++i) {
    if (g.verts[i].kind == VertexKind::External)
      groups[{-1 - g.verts[i].label, 0}].push_back(i);
    else
      groups[{(long)g.verts[i].kind, cls[i]}].push_back(i);
  }

  // which roster positions carry orientation order (odd parity)
  std::vector<bool> carries(nv, false);
  std::vector<int> carrier_rank(nv, -1);
  {
    int r = 0;
    for (int i = 0; i < nv; ++i)
      if (g.verts[i].kind != VertexKind::External) { carries[i] = true; carrier_rank[i] = r++; }
  }

  // iterate over products of per-group permutations; target position blocks
  // are assigned deterministically: group order, then within-group order.
  std::vector<std::vector<int>> group_members;
  for (auto& [k, mem] : groups) group_members.push_back(mem);
  int ngroups = (int)group_members.size();
  std::vector<std::vector<int>> perm_state(ngroups);
  for (int gi = 0; gi < ngroups; ++gi) {
    perm_state[gi].resize(group_members[gi].size());
    std::iota(perm_state[gi].begin(), perm_state[gi].end(), 0);
  }
  // global target slots: concatenate groups in map order
  std::vector<int> group_base(ngroups, 0);
  {
    int base = 0;
    for (int gi = 0; gi < ngroups; ++gi) {
      group_base[gi] = base;
      base += (int)group_members[gi].size();
    }
  }

  bool have_best = false;
  detail::CanonCandidate best;
  bool zero = false;

  std::vector<int> sigma(nv);  // old index -> new index
  while (true) {
    for (int gi = 0; gi < ngroups; ++gi)
      for (size_t p = 0; p < group_members[gi].size(); ++p)
        sigma[group_members[gi][p]] = group_base[gi] + perm_state[gi][p];

    int sign = 1;
    // relabel
    std::vector<std::pair<int, int>> edges2(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i)
      edges2[i] = {sigma[g.edges[i].first], sigma[g.edges[i].second]};

    if (g.parity == 0) {
      for (auto& e : edges2)
        if (e.first > e.second) std::swap(e.first, e.second);
      sign *= detail::sort_sign(edges2);
    } else {
      // vertex order sign: permutation induced on the ordered carrier roster
      std::vector<std::pair<int, int>> new_pos;
      for (int i = 0; i < nv; ++i)
        if (carries[i]) new_pos.emplace_back(sigma[i], carrier_rank[i]);
      std::sort(new_pos.begin(), new_pos.end());
      std::vector<int> p((int)new_pos.size());
      for (size_t i = 0; i < new_pos.size(); ++i) p[i] = new_pos[i].second;
      sign *= detail::perm_sign(p);
      for (auto& e : edges2)
        if (e.first > e.second) { std::swap(e.first, e.second); sign = -sign; }
      std::sort(edges2.begin(), edges2.end());
    }

    // build encoding
    OrientedGraph cand;
    cand.parity = g.parity;
    cand.verts.resize(nv);
    for (int i = 0; i < nv; ++i) cand.verts[sigma[i]] = g.verts[i];
    cand.edges = edges2;
    std::string enc = gcx1_encode(cand);

    if (!have_best || enc < best.enc) {
      best = {enc, sign};
      have_best = true;
    } else if (enc == best.enc && sign != best.sign) {
      zero = true;
    }

    // next permutation product
    int gi = ngroups - 1;
    while (gi >= 0 && !std::next_permutation(perm_state[gi].begin(), perm_state[gi].end()))
      --gi;
    if (gi < 0) break;
  }

  if (zero) return {"", 1, true};
  return {best.enc, best.sign, false};
}

// --- gradings and structural predicates ----------------------------------

enum class DegreeSector { Plain, Baseline };

// Cohomological degree. Plain sector: n(v-1) + (1-n)e, which makes the
// differential degree +1 and reproduces the loop-class degree r-n.
// Baseline sector (>=1 type II vertex, two-colored complex with parameters
// (m,n)): n*vI + m*vII + (1-n)e - m, the unique assignment making every
// term of the leading colored Maurer-Cartan element homogeneous of degree 1.
inline int degree(const OrientedGraph& g, int n, DegreeSector sector = DegreeSector::Plain,
                  int m = 0) {
  int e = g.num_edges();
  if (sector == DegreeSector::Plain) {
    int v = g.num_vertices() - g.count_kind(VertexKind::External);
    return n * (v - 1) + (1 - n) * e;
  }
  if (g.count_kind(VertexKind::Baseline) < 1)
    throw std::invalid_argument("baseline sector requires a type II vertex");
  int vi = g.count_kind(VertexKind::Internal);
  int vii = g.count_kind(VertexKind::Baseline);
  return n * vi + m * vii + (1 - n) * e - m;
}

inline int colored_degree(const OrientedGraph& g, int m, int n) {
  return g.count_kind(VertexKind::Baseline) > 0 ? degree(g, n, DegreeSector::Baseline, m)
                                                : degree(g, n, DegreeSector::Plain);
}

inline int num_components(const OrientedGraph& g) {
  int nv = g.num_vertices();
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges) parent[find(a)] = find(b);
  std::set<int> roots;
  for (int i = 0; i < nv; ++i) roots.insert(find(i));
  return (int)roots.size();
}

inline bool is_connected(const OrientedGraph& g) {
  return g.num_vertices() == 0 || num_components(g) == 1;
}

// first Betti number e - v + #components
inline int loop_order(const OrientedGraph& g) {
  return g.num_edges() - g.num_vertices() + num_components(g);
}

// valence of non-external vertices; self-loops count twice
inline int min_internal_valence(const OrientedGraph& g) {
  int mv = std::numeric_limits<int>::max();
  std::vector<int> val(g.num_vertices(), 0);
  for (auto [a, b] : g.edges) { ++val[a]; ++val[b]; }
  for (int i = 0; i < g.num_vertices(); ++i)
    if (g.verts[i].kind != VertexKind::External) mv = std::min(mv, val[i]);
  return mv == std::numeric_limits<int>::max() ? 0 : mv;
}

inline bool has_cycle(const OrientedGraph& g) {
  // any self-loop or parallel pair is a cycle; otherwise e > v - c
  return loop_order(g) > 0;
}

// Every single-vertex deletion leaves a graph containing a cycle.
inline bool is_very_loopy(const OrientedGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    OrientedGraph h;
    h.parity = g.parity;
    std::vector<int> remap(g.num_vertices(), -1);
    for (int i = 0; i < g.num_vertices(); ++i) {
      if (i == v) continue;
      remap[i] = h.num_vertices();
      h.verts.push_back(g.verts[i]);
    }
    for (auto [a, b] : g.edges)
      if (a != v && b != v) h.edges.emplace_back(remap[a], remap[b]);
    if (!has_cycle(h)) return false;
  }
  return true;
}

}  // namespace gcx
