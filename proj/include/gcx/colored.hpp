#pragma once

#include "gcx/gc.hpp"
#include "gcx/graph_vector.hpp"

namespace gcx {

// The two-colored complex GC_{m,n}: type I (internal) vertices, type II
// (baseline) vertices, coefficients in H(B(SO(m) x SO(n-m))) localized at
// the orthogonal Euler class E = E_{n-m}. Requires n - m even, so all
// vertices share one parity rule.
struct ColoredParams {
  int m = 1;
  int n = 3;
};

inline Ring colored_ring(int m, int n) {
  if ((n - m) % 2 != 0 || m < 1 || n <= m)
    throw std::invalid_argument("colored ring needs n - m even, 1 <= m < n");
  auto r = std::make_shared<RingDef>();
  r->kind = RingKind::Prod2;
  r->n = n - m;
  r->gens.push_back({"E", n - m, -1, true});  // Euler class of SO(n-m), inverted
  if (m >= 2) {
    if (m % 2 == 1) {
      for (int d = 4; d <= 2 * m - 2; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
    } else {
      for (int d = 4; d <= 2 * m - 4; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
      r->gens.push_back({"Em", m, -1});
    }
  }
  return r;
}

inline bool has_baseline(const OrientedGraph& g) {
  return g.count_kind(VertexKind::Baseline) > 0;
}

// Colored pre-Lie insertion: a plain argument inserts into type I vertices,
// a baseline argument into type II vertices.
inline GraphVector colored_insert(const GraphVector& a, const GraphVector& b) {
  GraphVector out(a.ambient_n(), a.ring());
  for (const auto& [kb, cb] : b.terms()) {
    OrientedGraph gb = gcx1_decode(kb);
    VertexKind target = has_baseline(gb) ? VertexKind::Baseline : VertexKind::Internal;
    GraphVector bterm(b.ambient_n(), b.ring());
    bterm.add_key(kb, cb);
    out += insert(a, bterm, [target](const Vertex& v) { return v.kind == target; });
  }
  return out;
}

inline GraphVector colored_bracket(const GraphVector& a, const GraphVector& b) {
  GraphVector out(a.ambient_n(), a.ring());
  int n = a.ambient_n();
  for (const auto& [ka, ca] : a.terms()) {
    GraphVector xa(n, a.ring());
    xa.add_key(ka, ca);
    int pa = graph_degree_parity(ka, n);
    for (const auto& [kb, cb] : b.terms()) {
      GraphVector xb(n, b.ring());
      xb.add_key(kb, cb);
      int pb = graph_degree_parity(kb, n);
      out += colored_insert(xa, xb);
      GraphVector ba = colored_insert(xb, xa);
      if (pa * pb % 2 == 0)
        out -= ba;
      else
        out += ba;
    }
  }
  return out;
}

// Leading Maurer-Cartan element: edge(I-I) + 2 edge(I-II) + E * edge(II-II).
// The mixed edge carries weight 2 in the coinvariant basis (its generator
// has trivial symmetry, the two others are S2-symmetric); with it
// [zhat0, zhat0] = 0 exactly.
inline GraphVector zhat0(int m, int n) {
  Ring ring = colored_ring(m, n);
  GraphVector z(n, ring);
  int parity = n % 2;
  OrientedGraph ii;
  ii.parity = parity;
  ii.verts = {internal_vertex(), internal_vertex()};
  ii.edges = {{0, 1}};
  z.add(ii, RingElem(ring, 1));
  OrientedGraph ib = ii;
  ib.verts[1] = baseline_vertex();
  z.add(ib, RingElem(ring, 2));
  OrientedGraph bb = ii;
  bb.verts[0] = bb.verts[1] = baseline_vertex();
  z.add(bb, RingElem::monomial(ring, "E"));
  return z;
}

// Twisted differential on the colored side; the untwisted differential of
// the deformation complex of the zero map vanishes, so D = [zhat0, -].
inline GraphVector colored_differential(int m, int n, const GraphVector& x) {
  return colored_bracket(zhat0(m, n), x);
}

// Differential on the plain side h = fcGC_n over the same ring.
inline GraphVector plain_differential(const GraphVector& x) {
  GraphVector e = GraphVector::single(x.ambient_n(), x.ring(), edge_graph(x.ambient_n() % 2),
                                      RingElem(x.ring(), 1));
  return bracket(e, x);
}

// iota: sum over subsets of vertices declared type II, weighted by E^{k-1}
// for k >= 1 type II vertices (the plain summand enters with weight 1).
// The weights are the unique ones making iota homogeneous of degree 0 and a
// morphism for the zhat0-twisted structures.
inline GraphVector iota(const GraphVector& x, int m, int n) {
  GraphVector out(n, x.ring());
  for (const auto& [k, c] : x.terms()) {
    OrientedGraph g = gcx1_decode(k);
    if (has_baseline(g)) throw std::invalid_argument("iota: argument must be plain");
    int v = g.num_vertices();
    for (unsigned mask = 0; mask < (1u << v); ++mask) {
      OrientedGraph h = g;
      int k2 = 0;
      for (int i = 0; i < v; ++i)
        if (mask & (1u << i)) {
          h.verts[i] = baseline_vertex();
          ++k2;
        }
      RingElem w = c;
      if (k2 >= 1) w = w * RingElem::monomial(x.ring(), "E", k2 - 1);
      out.add(h, w);
    }
  }
  return out;
}

// p0 projects to the plain summand of the splitting.
inline GraphVector p0(const GraphVector& y) {
  return y.filter([](const OrientedGraph& g) { return !has_baseline(g); });
}

// p1 keeps all-type-II graphs, relabels them plain, and multiplies by
// E^{1-k}; graphs with type I vertices go to zero.
inline GraphVector p1(const GraphVector& y, int m, int n) {
  GraphVector out(n, y.ring());
  for (const auto& [k, c] : y.terms()) {
    OrientedGraph g = gcx1_decode(k);
    if (g.count_kind(VertexKind::Internal) > 0) continue;
    if (!has_baseline(g)) {
      out.add_key(k, c);
      continue;
    }
    int v = g.count_kind(VertexKind::Baseline);
    OrientedGraph h = g;
    for (auto& vert : h.verts)
      if (vert.kind == VertexKind::Baseline) vert = internal_vertex();
    out.add(h, c * RingElem::monomial(y.ring(), "E", 1 - v));
  }
  return out;
}

namespace detail {

// marking = univalent type II vertex attached by one edge to a type I vertex
inline bool is_marking(const OrientedGraph& g, int v) {
  if (g.verts[v].kind != VertexKind::Baseline) return false;
  int deg = 0, other = -1;
  for (auto [a, b] : g.edges) {
    if (a == v) { ++deg; other = b; }
    if (b == v) { ++deg; other = a; }
    if (a == v && b == v) return false;
  }
  return deg == 1 && other >= 0 && g.verts[other].kind == VertexKind::Internal;
}

// append a marking at vertex v: new baseline vertex at the roster end, new
// edge (v -> new) at the edge-list end
inline OrientedGraph add_marking(const OrientedGraph& g, int v) {
  OrientedGraph h = g;
  h.verts.push_back(baseline_vertex());
  h.edges.emplace_back(v, h.num_vertices() - 1);
  return h;
}

// inverse surgery with the sign of moving the marking back to the end
inline std::pair<OrientedGraph, int> remove_marking(const OrientedGraph& g, int v) {
  OrientedGraph h;
  h.parity = g.parity;
  int sign = 1;
  int edge_idx = -1, attach = -1;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    auto [a, b] = g.edges[i];
    if (a == v) { edge_idx = (int)i; attach = b; }
    if (b == v) { edge_idx = (int)i; attach = a; }
  }
  if (g.parity == 1) {
    // carriers after v in the roster
    int after = 0;
    for (int i = v + 1; i < g.num_vertices(); ++i)
      if (g.verts[i].kind != VertexKind::External) ++after;
    if (after % 2) sign = -sign;
    // direction must be (attach -> marking)
    if (g.edges[edge_idx].first == v) sign = -sign;
  } else {
    int after = (int)g.edges.size() - 1 - edge_idx;
    if (after % 2) sign = -sign;
  }
  std::vector<int> remap(g.num_vertices(), -1);
  for (int i = 0; i < g.num_vertices(); ++i) {
    if (i == v) continue;
    remap[i] = h.num_vertices();
    h.verts.push_back(g.verts[i]);
  }
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if ((int)i == edge_idx) continue;
    h.edges.emplace_back(remap[g.edges[i].first], remap[g.edges[i].second]);
  }
  (void)attach;
  return {h, sign};
}

}  // namespace detail

// Associated-graded differential: the marking-addition operator
//   delta_0(Gamma) = E * sum_{v type I} (add marking at v),
// implemented independently of the twisted differential.
inline GraphVector delta0(const GraphVector& y, int m, int n) {
  GraphVector out(n, y.ring());
  RingElem E = RingElem::monomial(y.ring(), "E");
  for (const auto& [k, c] : y.terms()) {
    OrientedGraph g = gcx1_decode(k);
    for (int v = 0; v < g.num_vertices(); ++v)
      if (g.verts[v].kind == VertexKind::Internal)
        out.add(detail::add_marking(g, v), E * c);
  }
  return out;
}

// h0' sums over markings and removes one.
inline GraphVector h0prime(const GraphVector& y, int m, int n) {
  GraphVector out(n, y.ring());
  for (const auto& [k, c] : y.terms()) {
    OrientedGraph g = gcx1_decode(k);
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!detail::is_marking(g, v)) continue;
      auto [h, sign] = detail::remove_marking(g, v);
      out.add(h, sign > 0 ? c : -c);
    }
  }
  return out;
}

// h0 = 0 on graphs without type I vertices, else E^{-1} h0' / (#type I).
inline GraphVector homotopy_h0(const GraphVector& y, int m, int n) {
  GraphVector out(n, y.ring());
  RingElem Einv = RingElem::monomial(y.ring(), "E", -1);
  for (const auto& [k, c] : y.terms()) {
    OrientedGraph g = gcx1_decode(k);
    int ni = g.count_kind(VertexKind::Internal);
    if (ni == 0) continue;
    GraphVector one(n, y.ring());
    one.add_key(k, Rat(1, ni) * (Einv * c));
    out += h0prime(one, m, n);
  }
  return out;
}

// window of colored connected graphs (canonical keys)
inline std::vector<std::string> colored_basis(int m, int n, int v, int e) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  // plain connected structures, then all type assignments
  for (const auto& key : enumerate_connected(n % 2, v, e, 0)) {
    OrientedGraph g = gcx1_decode(key);
    for (unsigned mask = 0; mask < (1u << v); ++mask) {
      OrientedGraph h = g;
      for (int i = 0; i < v; ++i)
        if (mask & (1u << i)) h.verts[i] = baseline_vertex();
      auto cf = canonical_form(h);
      if (cf.zero) continue;
      if (seen.insert(cf.key).second) out.push_back(cf.key);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct MorphismReport {
  int graphs_checked = 0;
  int violations = 0;
};

// Machine verification that iota/p0/p1 intertwine brackets and the
// zhat0-twisted differentials on all window graphs.
inline MorphismReport check_morphism(const std::string& which, int m, int n, int vmax,
                                     int emax, std::uint64_t seed = 17) {
  MorphismReport rep;
  Ring ring = colored_ring(m, n);
  GraphVector z = zhat0(m, n);

  auto diff_g = [&](const GraphVector& y) { return colored_bracket(z, y); };
  auto diff_h = [&](const GraphVector& x) { return plain_differential(x); };

  std::vector<std::string> plain_keys, colored_keys;
  for (int v = 1; v <= vmax; ++v)
    for (int e = 0; e <= emax; ++e) {
      for (const auto& k : enumerate_connected(n % 2, v, e, 0)) plain_keys.push_back(k);
      for (const auto& k : colored_basis(m, n, v, e)) colored_keys.push_back(k);
    }

  auto single = [&](const std::string& k) {
    GraphVector x(n, ring);
    x.add_key(k, RingElem(ring, 1));
    return x;
  };

  if (which == "iota") {
    for (const auto& k : plain_keys) {
      GraphVector x = single(k);
      ++rep.graphs_checked;
      if (!(iota(diff_h(x), m, n) == diff_g(iota(x, m, n)))) ++rep.violations;
    }
    // bracket compatibility on seed-fixed pairs
    SampleRng rng(seed);
    for (int t = 0; t < 24 && plain_keys.size() >= 2; ++t) {
      GraphVector a = single(plain_keys[rng.below(plain_keys.size())]);
      GraphVector b = single(plain_keys[rng.below(plain_keys.size())]);
      ++rep.graphs_checked;
      if (!(iota(bracket(a, b), m, n) ==
            colored_bracket(iota(a, m, n), iota(b, m, n))))
        ++rep.violations;
    }
  } else if (which == "p0" || which == "p1") {
    auto proj = [&](const GraphVector& y) {
      return which == "p0" ? p0(y) : p1(y, m, n);
    };
    for (const auto& k : colored_keys) {
      GraphVector y = single(k);
      ++rep.graphs_checked;
      if (!(proj(diff_g(y)) == diff_h(proj(y)))) ++rep.violations;
    }
    SampleRng rng(seed);
    for (int t = 0; t < 24 && colored_keys.size() >= 2; ++t) {
      GraphVector a = single(colored_keys[rng.below(colored_keys.size())]);
      GraphVector b = single(colored_keys[rng.below(colored_keys.size())]);
      ++rep.graphs_checked;
      if (!(proj(colored_bracket(a, b)) == bracket(proj(a), proj(b)))) ++rep.violations;
    }
  } else {
    throw std::invalid_argument("unknown morphism: " + which);
  }
  return rep;
}

// startup homogeneity assertions for the configured (m, n)
inline void assert_sector_homogeneity(int m, int n) {
  GraphVector z = zhat0(m, n);
  for (const auto& [k, c] : z.terms()) {
    OrientedGraph g = gcx1_decode(k);
    int cd = 0;
    if (!c.is_homogeneous(&cd)) throw std::logic_error("zhat0 coefficient inhomogeneous");
    if (colored_degree(g, m, n) + cd != 1)
      throw std::logic_error("zhat0 term not of total degree 1: " + k);
  }
}

}  // namespace gcx
