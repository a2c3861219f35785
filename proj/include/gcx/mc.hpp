#pragma once

#include "gcx/gc.hpp"
#include "gcx/graph_vector.hpp"

namespace gcx {

// Element of BGC_n = GC_n (+hat) H(BSO(n)): a GraphVector with coefficients
// in the configured characteristic-class ring, truncated by vertex count and
// coefficient degree.
struct BGCElement {
  GraphVector gv;
  int n = 2;
  int vmax = 6;        // internal-vertex truncation
  int coeff_degcap = 64;  // secondary cap keeping odd-n series finite
};

inline OrientedGraph tadpole_graph(int parity) {
  OrientedGraph g;
  g.parity = parity;
  g.verts = {internal_vertex()};
  g.edges = {{0, 0}};
  return g;
}

inline OrientedGraph multi_edge_graph(int parity, int count) {
  OrientedGraph g;
  g.parity = parity;
  g.verts = {internal_vertex(), internal_vertex()};
  for (int i = 0; i < count; ++i) g.edges.emplace_back(0, 1);
  return g;
}

// The explicit Maurer-Cartan candidates: E (x) tadpole for even n; for odd
// n the series of two-vertex graphs with 2j+1 edges and top-Pontryagin
// coefficients. The theta coefficient is p_{2n-2}/48; the higher terms are
// pinned by the MC equation in the coinvariant graph basis used here,
// giving p_{2n-2}^j / (8^j (2j+1)!). The whole series has residue zero on
// the nose, before any valence projection.
inline BGCElement conjectured_m(int n, int vmax = 6, int coeff_degcap = -1) {
  if (n < 2) throw std::invalid_argument("conjectured_m needs n >= 2");
  Ring ring = so_ring(n);
  if (coeff_degcap < 0) coeff_degcap = 3 * (2 * n - 2);
  BGCElement out{GraphVector(n, ring), n, vmax, coeff_degcap};
  if (n % 2 == 0) {
    out.gv.add(tadpole_graph(0), RingElem::monomial(ring, "E"));
  } else {
    std::string top = "p" + std::to_string(2 * n - 2);
    for (int j = 1; (2 * n - 2) * j <= coeff_degcap; ++j) {
      Rat c = Rat(1) / factorial(2 * j + 1);
      for (int k = 0; k < j; ++k) c /= 8;
      out.gv.add(multi_edge_graph(1, 2 * j + 1), c * RingElem::monomial(ring, top, j));
    }
  }
  return out;
}

inline GraphVector truncate_by_vertices(const GraphVector& x, int vmax) {
  return x.filter([vmax](const OrientedGraph& g) { return g.num_vertices() <= vmax; });
}

inline GraphVector truncate_by_coeff_degree(const GraphVector& x, int degcap) {
  GraphVector out(x.ambient_n(), x.ring());
  for (const auto& [k, c] : x.terms()) {
    RingElem kept(c.ring());
    for (const auto& [m, q] : c.terms())
      if (c.monomial_degree(m) <= degcap) kept.add_term(m, q);
    out.add_key(k, kept);
  }
  return out;
}

// delta x + 1/2 [x,x], truncated to <= V vertices after the flavor
// projection. The graded half is folded into a single insert(x,x).
inline GraphVector mc_residue(const BGCElement& x, int V, GcFlavor projection) {
  GraphVector raw = bracket(GraphVector::single(x.n, x.gv.ring(), edge_graph(x.n % 2),
                                                RingElem(x.gv.ring(), 1)),
                            x.gv);
  raw += insert(x.gv, x.gv);
  raw = project_flavor(raw, projection);
  raw = truncate_by_vertices(raw, V);
  return truncate_by_coeff_degree(raw, x.coeff_degcap);
}

// D = delta + [m, -]; squares to zero within windows where m is MC.
inline GraphVector twisted_differential(const BGCElement& m, const GraphVector& x, int V) {
  GraphVector d = differential(x, GcFlavor::FGC);
  d += bracket(m.gv, x);
  d = truncate_by_vertices(d, V);
  return truncate_by_coeff_degree(d, m.coeff_degcap);
}

// Order-by-order exponential gauge flow
//   m -> e^{ad_nu}(m) - ((e^{ad_nu}-1)/ad_nu)(delta nu)
// truncated by the vertex filtration. Guarded against non-nilpotent nu.
inline BGCElement gauge(const BGCElement& m, const GraphVector& nu, int V) {
  for (const auto& [k, c] : nu.terms()) {
    OrientedGraph g = gcx1_decode(k);
    if (g.num_vertices() < 2)
      throw std::invalid_argument("gauge: nu must raise the vertex filtration");
  }
  GraphVector acc = truncate_by_vertices(m.gv, V);
  GraphVector result(m.gv.ambient_n(), m.gv.ring());
  result += acc;
  GraphVector term = acc;
  Rat fact = 1;
  for (int k = 1; k <= V + 2; ++k) {
    term = truncate_by_vertices(bracket(nu, term), V);
    if (term.is_zero()) break;
    fact *= k;
    result += Rat(1) / fact * term;
    if (k == V + 2) throw std::runtime_error("gauge: flow failed to terminate");
  }
  // inhomogeneous part: sum_{k>=0} ad_nu^k (delta nu) / (k+1)!
  GraphVector dnu = truncate_by_vertices(differential(nu, GcFlavor::FGC), V);
  GraphVector part = dnu;
  Rat kfact = 1;
  int k = 0;
  while (!part.is_zero()) {
    result -= Rat(1) / (kfact * (k + 1)) * part;
    part = truncate_by_vertices(bracket(nu, part), V);
    ++k;
    kfact *= k;
    if (k > V + 2) throw std::runtime_error("gauge: flow failed to terminate");
  }
  BGCElement out = m;
  out.gv = truncate_by_coeff_degree(result, m.coeff_degcap);
  return out;
}

// Z2-invariance: graphs scaled by (-1)^{loop order}, coefficients by E -> -E.
inline bool z2_check(const BGCElement& x) { return z2_graph_act(x.gv) == x.gv; }

// coefficient-ring restriction applied termwise; commutes with mc_residue
inline GraphVector restrict_coeffs(const GraphVector& x, RestrictionMap map) {
  GraphVector out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    RingElem rc = restrict(c, map);
    if (first) {
      out = GraphVector(x.ambient_n(), rc.ring());
      first = false;
    }
    out.add_key(k, rc);
  }
  if (first) {
    // empty input: still produce a vector over the restricted ring
    RingElem probe = restrict(RingElem(x.ring(), 1), map);
    out = GraphVector(x.ambient_n(), probe.ring());
  }
  return out;
}

}  // namespace gcx
