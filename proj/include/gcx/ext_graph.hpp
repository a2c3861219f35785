#pragma once

#include "gcx/cohen.hpp"
#include "gcx/gc.hpp"
#include "gcx/graph_vector.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

// graphs with r labeled external vertices and internal vertices; no
// self-loops (the edge forms pull back along distinct points)
enum class GraphsFlavor { Graphs2, Graphs, All };  // internal valence >= 2 / >= 3 / none

inline bool has_internal_only_component(const OrientedGraph& g) {
  int nv = g.num_vertices();
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges) parent[find(a)] = find(b);
  std::map<int, bool> has_ext;
  for (int i = 0; i < nv; ++i) {
    bool ext = g.verts[i].kind == VertexKind::External;
    has_ext[find(i)] = has_ext[find(i)] || ext;
  }
  for (auto& [root, ok] : has_ext)
    if (!ok) return true;
  return false;
}

inline bool in_graphs_flavor(const OrientedGraph& g, GraphsFlavor f, bool allow_loops = false) {
  if (!allow_loops)
    for (auto [a, b] : g.edges)
      if (a == b) return false;
  if (f == GraphsFlavor::All) return true;
  if (has_internal_only_component(g)) return false;
  int minval = f == GraphsFlavor::Graphs ? 3 : 2;
  std::vector<int> val(g.num_vertices(), 0);
  for (auto [a, b] : g.edges) { ++val[a]; ++val[b]; }
  for (int i = 0; i < g.num_vertices(); ++i)
    if (g.verts[i].kind == VertexKind::Internal && val[i] < minval) return false;
  return true;
}

inline OrientedGraph ext_skeleton(int parity, int r, int internals) {
  OrientedGraph g;
  g.parity = parity;
  for (int i = 1; i <= r; ++i) g.verts.push_back(external_vertex(i));
  for (int i = 0; i < internals; ++i) g.verts.push_back(internal_vertex());
  return g;
}

// basis of the (r, k internals, e edges) cell; canonical keys sorted
inline std::vector<std::string> ext_basis(int n, int r, int k, int e, GraphsFlavor f,
                                           bool allow_loops = false) {
  std::vector<std::string> out;
  int nv = r + k;
  if (nv == 0) return out;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) pairs.emplace_back(a, b);
  if (allow_loops)
    for (int a = r; a < nv; ++a) pairs.emplace_back(a, a);  // internal self-loops
  std::set<std::string> seen;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int lo) {
    if ((int)pick.size() == e) {
      OrientedGraph g = ext_skeleton(n % 2, r, k);
      for (int i : pick) g.edges.push_back(pairs[i]);
      if (!in_graphs_flavor(g, f, allow_loops)) return;
      auto cf = canonical_form(g);
      if (cf.zero) return;
      if (seen.insert(cf.key).second) out.push_back(cf.key);
      return;
    }
    for (int i = lo; i < (int)pairs.size(); ++i) {
      pick.push_back(i);
      rec(i);  // multi-edges allowed
      pick.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// cohomological degree (n-1)e - nk
inline int ext_degree(const OrientedGraph& g, int n) {
  return (n - 1) * g.num_edges() - n * g.count_kind(VertexKind::Internal);
}

// --- Hopf product: superposition along the external vertices -------------

inline GraphVector hopf_product(const GraphVector& a, const GraphVector& b, int r) {
  GraphVector out(a.ambient_n(), a.ring());
  for (const auto& [ka, ca] : a.terms()) {
    OrientedGraph ga = gcx1_decode(ka);
    for (const auto& [kb, cb] : b.terms()) {
      OrientedGraph gb = gcx1_decode(kb);
      // locate external slots
      std::vector<int> ext_a(r + 1, -1), ext_b(r + 1, -1);
      for (int i = 0; i < ga.num_vertices(); ++i)
        if (ga.verts[i].kind == VertexKind::External) ext_a[ga.verts[i].label] = i;
      for (int i = 0; i < gb.num_vertices(); ++i)
        if (gb.verts[i].kind == VertexKind::External) ext_b[gb.verts[i].label] = i;
      for (int l = 1; l <= r; ++l)
        if (ext_a[l] < 0 || ext_b[l] < 0)
          throw std::invalid_argument("arity mismatch in hopf_product");
      OrientedGraph g;
      g.parity = ga.parity;
      std::vector<int> map_a(ga.num_vertices()), map_b(gb.num_vertices());
      for (int l = 1; l <= r; ++l) {
        g.verts.push_back(external_vertex(l));
        map_a[ext_a[l]] = l - 1;
        map_b[ext_b[l]] = l - 1;
      }
      for (int i = 0; i < ga.num_vertices(); ++i)
        if (ga.verts[i].kind != VertexKind::External) {
          map_a[i] = g.num_vertices();
          g.verts.push_back(ga.verts[i]);
        }
      for (int i = 0; i < gb.num_vertices(); ++i)
        if (gb.verts[i].kind != VertexKind::External) {
          map_b[i] = g.num_vertices();
          g.verts.push_back(gb.verts[i]);
        }
      for (auto [x, y] : ga.edges) g.edges.emplace_back(map_a[x], map_a[y]);
      for (auto [x, y] : gb.edges) g.edges.emplace_back(map_b[x], map_b[y]);
      out.add(g, ca * cb);
    }
  }
  return out;
}

// --- differentials --------------------------------------------------------

namespace detail {

// contract edge idx, merging `removed` into `survivor`; sign: pull the edge
// to the front of the order (even parity) and the removed vertex to the end
// of the roster (odd parity, with the direction normalized survivor->removed)
inline std::pair<OrientedGraph, int> contract_edge(const OrientedGraph& g, int idx) {
  auto [a, b] = g.edges[idx];
  int survivor, removed;
  bool a_ext = g.verts[a].kind == VertexKind::External;
  bool b_ext = g.verts[b].kind == VertexKind::External;
  if (a_ext && b_ext) throw std::invalid_argument("cannot contract external-external edge");
  if (a_ext) { survivor = a; removed = b; }
  else if (b_ext) { survivor = b; removed = a; }
  else { survivor = std::min(a, b); removed = std::max(a, b); }
  int sign = 1;
  if (g.parity == 0) {
    if (idx % 2) sign = -sign;
  } else {
    if (g.edges[idx].first != survivor) sign = -sign;  // normalize direction
    int after = 0;
    for (int i = removed + 1; i < g.num_vertices(); ++i)
      if (g.verts[i].kind != VertexKind::External) ++after;
    if (after % 2) sign = -sign;
  }
  OrientedGraph h;
  h.parity = g.parity;
  std::vector<int> remap(g.num_vertices(), -1);
  for (int i = 0; i < g.num_vertices(); ++i) {
    if (i == removed) continue;
    remap[i] = h.num_vertices();
    h.verts.push_back(g.verts[i]);
  }
  for (int i = 0; i < (int)g.edges.size(); ++i) {
    if (i == idx) continue;
    int x = g.edges[i].first == removed ? survivor : g.edges[i].first;
    int y = g.edges[i].second == removed ? survivor : g.edges[i].second;
    h.edges.emplace_back(remap[x], remap[y]);
  }
  return {h, sign};
}


}  // namespace detail

// contraction differential: sum over edges with at least one internal end;
// the cochain-side differential of the cooperad, degree +1
inline GraphVector ext_differential_contract(const GraphVector& x, GraphsFlavor f,
                                             bool allow_loops = false) {
  GraphVector out(x.ambient_n(), x.ring());
  for (const auto& [k, c] : x.terms()) {
    OrientedGraph g = gcx1_decode(k);
    for (int i = 0; i < (int)g.edges.size(); ++i) {
      auto [a, b] = g.edges[i];
      if (a == b) continue;
      if (g.verts[a].kind == VertexKind::External && g.verts[b].kind == VertexKind::External)
        continue;
      auto [h, sign] = detail::contract_edge(g, i);
      if (!in_graphs_flavor(h, f, allow_loops)) continue;
      out.add(h, sign > 0 ? c : -c);
    }
  }
  return out;
}

// GC_n action on the chains side: insertion into internal vertices. This is
// a right Lie action: act([a,b]) = act(b) act(a) - (+-) act(a) act(b).
inline GraphVector gc_act(const GraphVector& gamma, const GraphVector& x) {
  return insert(x, gamma, [](const Vertex& v) { return v.kind == VertexKind::Internal; });
}

namespace detail {

// removes edge idx with the pull-to-front sign conventions of contract_edge
inline std::pair<OrientedGraph, int> remove_edge(const OrientedGraph& g, int idx,
                                                 bool normalize_up = true) {
  OrientedGraph h = g;
  int sign = 1;
  if (g.parity == 0) {
    if (idx % 2) sign = -sign;
  } else {
    auto [a, b] = g.edges[idx];
    if (normalize_up && a > b) sign = -sign;
  }
  h.edges.erase(h.edges.begin() + idx);
  return {h, sign};
}

// merge vertex `removed` into `survivor` (no edge contracted); same roster
// sign rule as contract_edge
inline std::pair<OrientedGraph, int> merge_vertices(const OrientedGraph& g, int survivor,
                                                    int removed) {
  int sign = 1;
  if (g.parity == 1) {
    int after = 0;
    for (int i = removed + 1; i < g.num_vertices(); ++i)
      if (g.verts[i].kind != VertexKind::External) ++after;
    if (after % 2) sign = -sign;
  }
  OrientedGraph h;
  h.parity = g.parity;
  std::vector<int> remap(g.num_vertices(), -1);
  for (int i = 0; i < g.num_vertices(); ++i) {
    if (i == removed) continue;
    remap[i] = h.num_vertices();
    h.verts.push_back(g.verts[i]);
  }
  for (auto [a, b] : g.edges) {
    int x = a == removed ? survivor : a;
    int y = b == removed ? survivor : b;
    h.edges.emplace_back(remap[x], remap[y]);
  }
  return {h, sign};
}

}  // namespace detail

// Dual action on the cochain side: collapse an embedded copy of gamma onto a
// single internal vertex. Supports the engine's Maurer-Cartan shapes: a
// single vertex with self-loops, and two-vertex parallel bundles.
inline GraphVector gc_act_dual(const GraphVector& gamma, const GraphVector& x,
                               GraphsFlavor f, bool allow_loops = true) {
  GraphVector out(x.ambient_n(), x.ring());
  for (const auto& [gk, gc] : gamma.terms()) {
    OrientedGraph gg = gcx1_decode(gk);
    int gv = gg.num_vertices();
    int gedges = gg.num_edges();
    if (gv > 2) throw std::invalid_argument("gc_act_dual: unsupported gamma shape");
    for (const auto& [k, c] : x.terms()) {
      OrientedGraph g = gcx1_decode(k);
      RingElem coeff = gc * c;
      if (gv == 1) {
        // tadpole twist on the tadpole-free cochain complex: the equivariant
        // closure defect deletes one edge at a time, endpoints kept
        if (gedges != 1) continue;  // multi-loop vertices vanish by symmetry
        for (int i = 0; i < (int)g.edges.size(); ++i) {
          auto [h, sign] = detail::remove_edge(g, i, false);
          if (!in_graphs_flavor(h, f, allow_loops)) continue;
          out.add(h, sign > 0 ? coeff : -coeff);
        }
      } else {
        // collapse `gedges` parallel edges onto the surviving vertex; one
        // endpoint may be external (the cooperadic slot term), at least one
        // must be internal
        for (int u = 0; u < g.num_vertices(); ++u) {
          for (int v = u + 1; v < g.num_vertices(); ++v) {
            bool u_ext = g.verts[u].kind == VertexKind::External;
            bool v_ext = g.verts[v].kind == VertexKind::External;
            if (u_ext && v_ext) continue;
            if (g.verts[u].kind == VertexKind::Baseline ||
                g.verts[v].kind == VertexKind::Baseline)
              continue;
            int survivor = v_ext ? v : u;
            int removed = v_ext ? u : v;
            std::vector<int> par;
            for (int i = 0; i < (int)g.edges.size(); ++i) {
              auto [a, b] = g.edges[i];
              if ((a == u && b == v) || (a == v && b == u)) par.push_back(i);
            }
            if ((int)par.size() < gedges) continue;
            // choose a subset of size gedges
            std::vector<int> idxs;
            std::function<void(int, int)> choose = [&](int got, int lo) {
              if (got == gedges) {
                OrientedGraph cur = g;
                int sign = 1;
                // remove picked edges from back to front
                std::vector<int> sorted(idxs);
                std::sort(sorted.rbegin(), sorted.rend());
                for (int idx : sorted) {
                  if (cur.parity == 1 && cur.edges[idx].first == removed) sign = -sign;
                  if (cur.parity == 0 && idx % 2) sign = -sign;
                  cur.edges.erase(cur.edges.begin() + idx);
                }
                auto [merged, s2] = detail::merge_vertices(cur, survivor, removed);
                if (in_graphs_flavor(merged, f, allow_loops)) {
                  GraphVector one(x.ambient_n(), x.ring());
                  one.add(merged, (sign * s2) > 0 ? coeff : -coeff);
                  out += one;
                }
                return;
              }
              for (int i = lo; i < (int)par.size(); ++i) {
                idxs.push_back(par[i]);
                choose(got + 1, i + 1);
                idxs.pop_back();
              }
            };
            choose(0, 0);
          }
        }
      }
    }
  }
  return out;
}

// cochain twisted differential: contraction plus the dual action of m;
// squares to zero on windows where m is Maurer-Cartan
inline GraphVector ext_twisted_diff(const GraphVector& m_gv, const GraphVector& x,
                                    GraphsFlavor f, bool allow_loops = true) {
  GraphVector out = ext_differential_contract(x, f, allow_loops);
  out += gc_act_dual(m_gv, x, f, allow_loops);
  return out;
}

// --- cocomposition --------------------------------------------------------

struct CocompositionTerm {
  std::string macro;                  // graph on block-externals 1..#blocks
  std::vector<std::string> blocks;    // per-block graphs, externals relabeled
  Rat coeff;
};

// cooperad cocomposition dual to gluing: sum over assignments of internal
// vertices to the macro level or one of the blocks
inline std::vector<CocompositionTerm> cocompose(const GraphVector& x,
                                                const std::vector<std::vector<int>>& partition) {
  std::vector<CocompositionTerm> terms;
  int nblocks = (int)partition.size();
  std::map<int, int> block_of_label;
  for (int bi = 0; bi < nblocks; ++bi)
    for (int l : partition[bi]) {
      if (block_of_label.count(l)) throw std::invalid_argument("label repeated in partition");
      block_of_label[l] = bi;
    }
  for (const auto& [key, coeff_elem] : x.terms()) {
    if (coeff_elem.terms().size() != 1 || !coeff_elem.ring()->gens.empty())
      throw std::invalid_argument("cocompose expects scalar coefficients");
    Rat coeff = coeff_elem.terms().begin()->second;
    OrientedGraph g = gcx1_decode(key);
    std::vector<int> internals;
    for (int i = 0; i < g.num_vertices(); ++i) {
      if (g.verts[i].kind == VertexKind::External) {
        if (!block_of_label.count(g.verts[i].label))
          throw std::invalid_argument("partition does not cover external labels");
      } else {
        internals.push_back(i);
      }
    }
    int ni = (int)internals.size();
    std::vector<int> assign(ni, 0);  // 0 = macro, 1..nblocks = block
    while (true) {
      // group of each vertex: -1 macro-external seed; block id or macro
      std::vector<int> group(g.num_vertices(), 0);
      for (int i = 0; i < g.num_vertices(); ++i)
        if (g.verts[i].kind == VertexKind::External)
          group[i] = 1 + block_of_label[g.verts[i].label];
      for (int t = 0; t < ni; ++t) group[internals[t]] = assign[t];
      // edges: inside a block when both ends in the same block group
      // orientation shuffle sign: stable partition of edges (even parity)
      // and carrier vertices (odd parity) into [macro | block1 | ...]
      int sign = 1;
      auto edge_group = [&](size_t ei) {
        auto [a, b] = g.edges[ei];
        return (group[a] >= 1 && group[a] == group[b]) ? group[a] : 0;
      };
      if (g.parity == 0) {
        long inv = 0;
        for (size_t i = 0; i < g.edges.size(); ++i)
          for (size_t j = i + 1; j < g.edges.size(); ++j)
            if (edge_group(j) < edge_group(i)) ++inv;
        if (inv % 2) sign = -sign;
      } else {
        long inv = 0;
        std::vector<int> carrier_groups;
        for (int i = 0; i < g.num_vertices(); ++i)
          if (g.verts[i].kind != VertexKind::External)
            carrier_groups.push_back(group[i]);
        for (size_t i = 0; i < carrier_groups.size(); ++i)
          for (size_t j = i + 1; j < carrier_groups.size(); ++j)
            if (carrier_groups[j] < carrier_groups[i]) ++inv;
        if (inv % 2) sign = -sign;
      }
      // build factors
      bool ok = true;
      CocompositionTerm term;
      term.coeff = coeff * Rat(sign);
      // macro graph: block-externals 1..nblocks plus macro internals
      {
        OrientedGraph mg;
        mg.parity = g.parity;
        std::vector<int> remap(g.num_vertices(), -1);
        for (int bi = 0; bi < nblocks; ++bi) mg.verts.push_back(external_vertex(bi + 1));
        for (int i = 0; i < g.num_vertices(); ++i) {
          if (group[i] == 0) {
            remap[i] = mg.num_vertices();
            mg.verts.push_back(g.verts[i]);
          } else {
            remap[i] = group[i] - 1;
          }
        }
        for (size_t ei = 0; ei < g.edges.size(); ++ei)
          if (edge_group(ei) == 0)
            mg.edges.emplace_back(remap[g.edges[ei].first], remap[g.edges[ei].second]);
        auto cf = canonical_form(mg);
        if (cf.zero) ok = false;
        else {
          term.macro = cf.key;
          term.coeff *= cf.sign;
        }
      }
      for (int bi = 0; ok && bi < nblocks; ++bi) {
        OrientedGraph bg;
        bg.parity = g.parity;
        std::vector<int> remap(g.num_vertices(), -1);
        // externals of the block relabeled 1..|B| in label order
        std::vector<int> labels = partition[bi];
        std::sort(labels.begin(), labels.end());
        for (size_t li = 0; li < labels.size(); ++li) {
          for (int i = 0; i < g.num_vertices(); ++i)
            if (g.verts[i].kind == VertexKind::External && g.verts[i].label == labels[li]) {
              remap[i] = bg.num_vertices();
              bg.verts.push_back(external_vertex((int)li + 1));
            }
        }
        for (int i = 0; i < g.num_vertices(); ++i)
          if (g.verts[i].kind != VertexKind::External && group[i] == bi + 1) {
            remap[i] = bg.num_vertices();
            bg.verts.push_back(g.verts[i]);
          }
        for (size_t ei = 0; ei < g.edges.size(); ++ei)
          if (edge_group(ei) == bi + 1)
            bg.edges.emplace_back(remap[g.edges[ei].first], remap[g.edges[ei].second]);
        auto cf = canonical_form(bg);
        if (cf.zero) { ok = false; break; }
        term.blocks.push_back(cf.key);
        term.coeff *= cf.sign;
      }
      if (ok && term.coeff != 0) terms.push_back(std::move(term));
      int t = 0;
      while (t < ni && ++assign[t] == nblocks + 1) assign[t++] = 0;
      if (t == ni) break;
      if (ni == 0) break;
    }
  }
  // combine equal terms
  std::map<std::pair<std::string, std::vector<std::string>>, Rat> merged;
  for (auto& t : terms) merged[{t.macro, t.blocks}] += t.coeff;
  std::vector<CocompositionTerm> out;
  for (auto& [k, c] : merged)
    if (c != 0) out.push_back({k.first, k.second, c});
  return out;
}

// --- auxiliary grading and window cohomology ------------------------------

inline bool internally_connected(const OrientedGraph& g) {
  std::vector<int> internals;
  for (int i = 0; i < g.num_vertices(); ++i)
    if (g.verts[i].kind == VertexKind::Internal) internals.push_back(i);
  if (internals.empty()) return g.num_edges() == 1;
  std::map<int, int> idx;
  for (size_t i = 0; i < internals.size(); ++i) idx[internals[i]] = (int)i;
  std::vector<int> parent(internals.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges)
    if (idx.count(a) && idx.count(b)) parent[find(idx[a])] = find(idx[b]);
  std::set<int> roots;
  for (size_t i = 0; i < internals.size(); ++i) roots.insert(find((int)i));
  return roots.size() == 1;
}

// 2 #internal - #edges + 1 on internally connected generators
inline int aux_degree(const OrientedGraph& g) {
  if (!internally_connected(g))
    throw std::invalid_argument("aux_degree needs an internally connected generator");
  return 2 * g.count_kind(VertexKind::Internal) - g.num_edges() + 1;
}

struct ExtDimsTable {
  std::map<int, int> h_by_degree;      // window cohomology
  std::map<int, int> cohen_by_degree;  // oracle
  std::map<int, int> gravity_by_degree;
  bool match = false;  // over the compared degree range
};

// Window cohomology of the contraction complex, exact within the window:
// kernels are computed on k <= internal_max, images from k <= internal_max+1.
inline ExtDimsTable cohomology_dims(int n, int r, int internal_max,
                                    std::pair<int, int> degree_range,
                                    GraphsFlavor f = GraphsFlavor::Graphs) {
  ExtDimsTable table;
  CohenAlgebra cohen(n, r);
  table.cohen_by_degree = cohen.dims();
  table.gravity_by_degree = cohen.gravity_dims();

  std::map<std::pair<int, int>, std::vector<std::string>> bases;  // (k,e)
  auto basis_of = [&](int k, int e) -> const std::vector<std::string>& {
    auto key = std::make_pair(k, e);
    auto it = bases.find(key);
    if (it == bases.end()) it = bases.emplace(key, ext_basis(n, r, k, e, f)).first;
    return it->second;
  };
  auto matrix = [&](const std::vector<std::string>& src,
                    const std::vector<std::string>& dst) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < dst.size(); ++i) index[dst[i]] = (int)i;
    SparseMatrix m((int)dst.size(), (int)src.size());
    for (size_t c = 0; c < src.size(); ++c) {
      GraphVector x(n, trivial_ring());
      x.add_key(src[c], RingElem(trivial_ring(), 1));
      GraphVector dx = ext_differential_contract(x, f);
      for (const auto& [k, coeff] : dx.terms()) {
        auto it = index.find(k);
        if (it != index.end()) m.add(it->second, (int)c, coeff.terms().begin()->second);
      }
    }
    return m;
  };

  for (int k = 0; k <= internal_max; ++k)
    for (int d = degree_range.first; d <= degree_range.second; ++d) {
      // degree d = (n-1)e - nk
      if ((d + n * k) % (n - 1) != 0) continue;
      int e = (d + n * k) / (n - 1);
      if (e < 0) continue;
      const auto& basis = basis_of(k, e);
      if (basis.empty()) continue;
      // outgoing: contraction lowers k by one, raises degree
      int eo = e - 1, ko = k - 1;
      SparseMatrix dout = matrix(basis, ko >= 0 && eo >= 0
                                            ? basis_of(ko, eo)
                                            : std::vector<std::string>{});
      int rank_out = rank(dout);
      // incoming: sources have k+1 internals, degree d-1
      int rank_in = 0;
      if (k + 1 <= internal_max + 1) {
        int ei = e + 1;
        const auto& src = basis_of(k + 1, ei);
        if (!src.empty()) rank_in = rank(matrix(src, basis));
      }
      table.h_by_degree[d] += (int)basis.size() - rank_out - rank_in;
    }
  for (auto it = table.h_by_degree.begin(); it != table.h_by_degree.end();)
    it = it->second == 0 ? table.h_by_degree.erase(it) : std::next(it);

  table.match = true;
  for (int d = degree_range.first; d <= degree_range.second; ++d) {
    int got = table.h_by_degree.count(d) ? table.h_by_degree.at(d) : 0;
    int want = table.cohen_by_degree.count(d) ? table.cohen_by_degree.at(d) : 0;
    if (got != want) table.match = false;
  }
  return table;
}

}  // namespace gcx
