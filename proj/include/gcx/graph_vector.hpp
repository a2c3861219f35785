#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcx/char_ring.hpp"
#include "gcx/graph.hpp"

namespace gcx {

// Finite formal sum {canonical graph -> RingElem} with a fixed ambient n.
// All stored keys are canonical and nonzero; insertion routes orientation
// signs through canonical_form.
class GraphVector {
 public:
  GraphVector() = default;
  GraphVector(int n, Ring ring) : n_(n), ring_(std::move(ring)) {}

  static GraphVector single(int n, Ring ring, const OrientedGraph& g, const RingElem& c) {
    GraphVector v(n, std::move(ring));
    v.add(g, c);
    return v;
  }
  static GraphVector single(int n, const OrientedGraph& g, const Rat& c = 1) {
    GraphVector v(n, trivial_ring());
    v.add(g, RingElem(trivial_ring(), c));
    return v;
  }

  int ambient_n() const { return n_; }
  const Ring& ring() const { return ring_; }
  const std::map<std::string, RingElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add(const OrientedGraph& g, const RingElem& c) {
    if (g.parity != n_ % 2) throw std::invalid_argument("parity mismatch");
    if (c.is_zero()) return;
    auto cf = canonical_form(g);
    if (cf.zero) return;
    add_key(cf.key, cf.sign > 0 ? c : -c);
  }

  void add_key(const std::string& key, const RingElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GraphVector& operator+=(const GraphVector& o) {
    for (const auto& [k, c] : o.terms_) add_key(k, c);
    return *this;
  }
  GraphVector& operator-=(const GraphVector& o) {
    for (const auto& [k, c] : o.terms_) add_key(k, -c);
    return *this;
  }
  friend GraphVector operator+(GraphVector a, const GraphVector& b) { return a += b; }
  friend GraphVector operator-(GraphVector a, const GraphVector& b) { return a -= b; }
  friend GraphVector operator*(const Rat& c, GraphVector v) {
    if (c == 0) return GraphVector(v.n_, v.ring_);
    for (auto& [k, e] : v.terms_) e = c * e;
    return v;
  }
  friend GraphVector operator*(const RingElem& c, GraphVector v) {
    GraphVector out(v.n_, v.ring_);
    for (auto& [k, e] : v.terms_) out.add_key(k, c * e);
    return out;
  }

  bool operator==(const GraphVector& o) const { return terms_ == o.terms_; }

  // filters terms in place
  template <typename Pred>
  GraphVector filter(Pred keep) const {
    GraphVector out(n_, ring_);
    for (const auto& [k, c] : terms_)
      if (keep(gcx1_decode(k))) out.add_key(k, c);
    return out;
  }

 private:
  int n_ = 2;
  Ring ring_ = trivial_ring();
  std::map<std::string, RingElem> terms_;
};

namespace detail {

inline int carriers(const OrientedGraph& g) {
  int c = 0;
  for (const auto& v : g.verts)
    if (v.kind != VertexKind::External) ++c;
  return c;
}

// Koszul sign of splicing b's vertex block at the position of v in a's
// roster, odd parity only: the net block excess (M-1 odd vertex symbols)
// crosses every carrier vertex after v.
inline int splice_sign(const OrientedGraph& a, int v, const OrientedGraph& b) {
  if (a.parity != 1) return 1;
  int after = 0;
  for (int i = v + 1; i < a.num_vertices(); ++i)
    if (a.verts[i].kind != VertexKind::External) ++after;
  int m = carriers(b);
  return ((m - 1) * after) % 2 ? -1 : 1;
}

// Graph surgery behind the pre-Lie insertion: replace vertex v of a by the
// whole of b, reattaching the edge ends formerly at v according to the
// reconnection map. Orientation data is spliced: b's roster replaces v's
// position, b's edges are appended after a's.
inline OrientedGraph insert_at(const OrientedGraph& a, int v, const OrientedGraph& b,
                               const std::vector<int>& reconnect) {
  OrientedGraph out;
  out.parity = a.parity;
  int bsize = b.num_vertices();
  // index maps
  std::vector<int> amap(a.num_vertices(), -1);
  for (int i = 0; i < a.num_vertices(); ++i)
    amap[i] = i < v ? i : (i == v ? -1 : i + bsize - 1);
  int bbase = v;
  out.verts.reserve(a.num_vertices() + bsize - 1);
  for (int i = 0; i < v; ++i) out.verts.push_back(a.verts[i]);
  for (int i = 0; i < bsize; ++i) out.verts.push_back(b.verts[i]);
  for (int i = v + 1; i < a.num_vertices(); ++i) out.verts.push_back(a.verts[i]);

  size_t end_counter = 0;
  for (auto [x, y] : a.edges) {
    int nx, ny;
    if (x == v) nx = bbase + reconnect[end_counter++];
    else nx = amap[x];
    if (y == v) ny = bbase + reconnect[end_counter++];
    else ny = amap[y];
    out.edges.emplace_back(nx, ny);
  }
  for (auto [x, y] : b.edges) out.edges.emplace_back(bbase + x, bbase + y);
  return out;
}

inline int count_ends_at(const OrientedGraph& g, int v) {
  int c = 0;
  for (auto [a, b] : g.edges) {
    if (a == v) ++c;
    if (b == v) ++c;
  }
  return c;
}

}  // namespace detail

// Graph degree mod 2 decides all Koszul signs: coefficient degrees are even.
inline int graph_degree_parity(const std::string& key, int n) {
  auto g = gcx1_decode(key);
  return ((degree(g, n) % 2) + 2) % 2;
}

// Pre-Lie insertion product: sum over vertices of a and all reconnections
// of the incident edge ends to vertices of b.
// vertex_ok(kind) limits which vertices of a accept b (all by default).
inline GraphVector insert(const GraphVector& a, const GraphVector& b,
                          std::function<bool(const Vertex&)> vertex_ok = nullptr) {
  if (a.ambient_n() % 2 != b.ambient_n() % 2 || a.ambient_n() != b.ambient_n())
    throw std::invalid_argument("parity mismatch");
  GraphVector out(a.ambient_n(), a.ring());
  for (const auto& [ka, ca] : a.terms()) {
    OrientedGraph ga = gcx1_decode(ka);
    for (const auto& [kb, cb] : b.terms()) {
      OrientedGraph gb = gcx1_decode(kb);
      RingElem coeff = ca * cb;
      for (int v = 0; v < ga.num_vertices(); ++v) {
        if (vertex_ok && !vertex_ok(ga.verts[v])) continue;
        if (!vertex_ok && ga.verts[v].kind == VertexKind::External) continue;
        int ends = detail::count_ends_at(ga, v);
        int bn = gb.num_vertices();
        RingElem signed_coeff =
            detail::splice_sign(ga, v, gb) > 0 ? coeff : -coeff;
        // all maps (edge ends at v) -> V(b)
        std::vector<int> rec(ends, 0);
        while (true) {
          out.add(detail::insert_at(ga, v, gb, rec), signed_coeff);
          int i = 0;
          while (i < ends && ++rec[i] == bn) rec[i++] = 0;
          if (i == ends) break;
        }
      }
    }
  }
  return out;
}

// graded bracket: insert(a,b) - (-1)^{|a||b|} insert(b,a), term by term
inline GraphVector bracket(const GraphVector& a, const GraphVector& b) {
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
      out += insert(xa, xb);
      GraphVector ba = insert(xb, xa);
      if (pa * pb % 2 == 0) out -= ba;
      else out += ba;
    }
  }
  return out;
}

enum class GcFlavor { FGC, GC2, GC };

inline bool in_flavor(const OrientedGraph& g, GcFlavor f) {
  if (!is_connected(g)) return false;
  switch (f) {
    case GcFlavor::FGC: return true;
    case GcFlavor::GC2: return g.num_edges() == 0 || min_internal_valence(g) >= 2;
    case GcFlavor::GC: return g.num_edges() == 0 || min_internal_valence(g) >= 3;
  }
  return false;
}

inline GraphVector project_flavor(const GraphVector& x, GcFlavor f) {
  return x.filter([f](const OrientedGraph& g) { return in_flavor(g, f); });
}

inline OrientedGraph edge_graph(int parity) {
  OrientedGraph e;
  e.parity = parity;
  e.verts = {internal_vertex(), internal_vertex()};
  e.edges = {{0, 1}};
  return e;
}

// delta = bracket with the single edge, then projection to the flavor span
inline GraphVector differential(const GraphVector& x, GcFlavor flavor) {
  GraphVector e = GraphVector::single(x.ambient_n(), x.ring(), edge_graph(x.ambient_n() % 2),
                                      RingElem(x.ring(), 1));
  return project_flavor(bracket(e, x), flavor);
}

// graphs scaled by (-1)^{loop order}; combined with E -> -E on coefficients
// this is the Z2 = pi_0(O(n)) action on BGC_n.
inline GraphVector z2_graph_act(const GraphVector& x) {
  GraphVector out(x.ambient_n(), x.ring());
  for (const auto& [k, c] : x.terms()) {
    int lo = loop_order(gcx1_decode(k));
    out.add_key(k, lo % 2 ? -z2_act(c) : z2_act(c));
  }
  return out;
}

}  // namespace gcx
