#pragma once

#include "gcx/ext_graph.hpp"

namespace gcx {

// Weight-truncated model for the chains of the framed disks operad:
// P(r) = Graphs_n(r) decorated by the coefficient algebra A. In weight <= 3
// the only decorations are the unit and a single P_1 (weight 3, carried by
// the empty graph); a graph contributes its edge count. The differential is
// edge contraction plus the twist collapsing a triple leg at slot j to
// P_1 @ j. Everything of weight >= 4 is dropped.
struct PBasisElem {
  std::string graph;  // canonical key
  int p1_slot = 0;    // 0 = undecorated, else the slot carrying P_1
  bool operator<(const PBasisElem& o) const {
    return std::tie(graph, p1_slot) < std::tie(o.graph, o.p1_slot);
  }
  bool operator==(const PBasisElem& o) const = default;
};

using PVector = std::map<PBasisElem, Rat>;

inline std::string empty_ext_graph_key(int n, int r) {
  return canonical_form(ext_skeleton(n % 2, r, 0)).key;
}

inline std::string triple_leg_key(int n, int r, int slot) {
  OrientedGraph g = ext_skeleton(n % 2, r, 1);
  for (int i = 0; i < 3; ++i) g.edges.emplace_back(slot - 1, r);
  return canonical_form(g).key;
}

// weight <= 3 basis of P(r)
inline std::vector<PBasisElem> p_basis(int n, int r) {
  std::vector<PBasisElem> out;
  for (int e = 0; e <= 3; ++e)
    for (int k = 0; 3 * k <= 2 * e; ++k)
      for (const auto& key : ext_basis(n, r, k, e, GraphsFlavor::Graphs))
        out.push_back({key, 0});
  std::string empty = empty_ext_graph_key(n, r);
  for (int j = 1; j <= r; ++j) out.push_back({empty, j});
  std::sort(out.begin(), out.end());
  return out;
}

inline void p_add(PVector& acc, const PBasisElem& el, const Rat& c) {
  if (c == 0) return;
  auto it = acc.find(el);
  if (it == acc.end()) acc.emplace(el, c);
  else {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

// differential: contraction + triple-leg collapse, truncated to weight <= 3
inline PVector p_differential(int n, int r, const PBasisElem& el) {
  PVector out;
  if (el.p1_slot != 0) return out;  // d P_1 = sum_{i+j=1} P_i P_j = 0
  GraphVector x(n, trivial_ring());
  x.add_key(el.graph, RingElem(trivial_ring(), 1));
  GraphVector dc = ext_differential_contract(x, GraphsFlavor::Graphs);
  for (const auto& [k, c] : dc.terms())
    p_add(out, {k, 0}, c.terms().begin()->second);
  // twist: the whole graph is a triple leg at some slot -> P_1 there
  for (int j = 1; j <= r; ++j)
    if (el.graph == triple_leg_key(n, r, j))
      p_add(out, {empty_ext_graph_key(n, r), j}, 1);
  return out;
}


struct NonformalityReport {
  int n = 3;
  int dim_p1 = 0;                      // dim P(1)_{w<=3}
  int orbit_classes_p2 = 0;            // S2-orbit classes in P(2)_{w<=3}
  int dim_p2 = 0;
  int dim_p3 = 0;
  bool d_squares_to_zero = true;
  bool arity1_p1_only_closed = false;  // in the P_1 degree, ker d = <P_1>
  bool arity2_assignment_closed = false;
  bool obstruction = false;            // target graph not in im(d), both readings
  std::string target_graph;
};

namespace detail {

inline std::string swap_labels_key(const std::string& key) {
  OrientedGraph g = gcx1_decode(key);
  for (auto& v : g.verts)
    if (v.kind == VertexKind::External && v.label <= 2) v.label = 3 - v.label;
  return canonical_form(g).key;
}

}  // namespace detail

// The weight-<=3 obstruction computation for odd n.
inline NonformalityReport nonformality_report(int n) {
  if (n % 2 == 0 || n < 3) throw std::invalid_argument("nonformality_report needs odd n >= 3");
  NonformalityReport rep;
  rep.n = n;

  auto b1 = p_basis(n, 1);
  auto b2 = p_basis(n, 2);
  auto b3 = p_basis(n, 3);
  rep.dim_p1 = (int)b1.size();
  rep.dim_p2 = (int)b2.size();
  rep.dim_p3 = (int)b3.size();

  // S2 orbits on P(2)
  std::set<PBasisElem> seen;
  int orbits = 0;
  for (const auto& el : b2) {
    if (seen.count(el)) continue;
    PBasisElem img{detail::swap_labels_key(el.graph),
                   el.p1_slot == 0 ? 0 : 3 - el.p1_slot};
    seen.insert(el);
    seen.insert(img);
    ++orbits;
  }
  rep.orbit_classes_p2 = orbits;

  // d^2 = 0 on the truncation, both readings
  for (int r = 1; r <= 3; ++r) {
    for (const auto& el : p_basis(n, r)) {
      PVector d1 = p_differential(n, r, el), dd;
      for (const auto& [e2, c] : d1)
        for (const auto& [e3, c3] : p_differential(n, r, e2)) p_add(dd, e3, c * c3);
      if (!dd.empty()) rep.d_squares_to_zero = false;
    }
  }

  // arity 1: in the P_1 degree the only closed element is P_1 itself
  {
    PBasisElem p1{empty_ext_graph_key(n, 1), 1};
    PBasisElem leg{triple_leg_key(n, 1, 1), 0};
    bool p1_closed = p_differential(n, 1, p1).empty();
    bool leg_closed = p_differential(n, 1, leg).empty();
    rep.arity1_p1_only_closed = p1_closed && !leg_closed;
  }

  // arity 2: single / double / triple edge graph parts of the displayed
  // assignment are closed in the truncation
  {
    auto edge_key = [&](int count) {
      OrientedGraph g = ext_skeleton(n % 2, 2, 0);
      for (int i = 0; i < count; ++i) g.edges.emplace_back(0, 1);
      return canonical_form(g);
    };
    bool ok = true;
    for (int c = 1; c <= 3; ++c) {
      auto cf = edge_key(c);
      if (cf.zero) { ok = false; continue; }
      if (!p_differential(n, 2, {cf.key, 0}).empty()) ok = false;
    }
    rep.arity2_assignment_closed = ok;
  }

  // obstruction: the arity-3 graph with edges 1-2 and 1-3 is not in the
  // image of the differential, in either reading
  {
    OrientedGraph g = ext_skeleton(n % 2, 3, 0);
    g.edges = {{0, 1}, {0, 2}};
    auto cf = canonical_form(g);
    rep.target_graph = cf.key;
    PBasisElem target{cf.key, 0};
    std::map<PBasisElem, int> index;
    for (size_t i = 0; i < b3.size(); ++i) index[b3[i]] = (int)i;
    SparseMatrix m((int)b3.size(), (int)b3.size());
    for (size_t c = 0; c < b3.size(); ++c)
      for (const auto& [el, val] : p_differential(n, 3, b3[c]))
        m.add(index.at(el), (int)c, val);
    SparseMatrix mt((int)b3.size(), (int)b3.size());
    for (const auto& [rc, val] : m.entries()) mt.add(rc.second, rc.first, val);
    std::vector<Rat> rhs(b3.size(), Rat(0));
    rhs[index.at(target)] = 1;
    bool im_contract = solve_in_image(m, rhs).has_value();
    bool im_adjoint = solve_in_image(mt, rhs).has_value();
    rep.obstruction = !im_contract && !im_adjoint;
  }
  return rep;
}

}  // namespace gcx
