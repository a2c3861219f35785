#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

struct GenDef {
  std::string name;
  int degree = 0;
  int z2sign = 1;        // +1 fixed, -1 negated by the pi_0(O(n)) action
  bool localized = false;  // negative exponents permitted
  bool operator==(const GenDef&) const = default;
};

enum class RingKind { Trivial, SO, O, Prod2 };

struct RingDef {
  RingKind kind = RingKind::Trivial;
  int n = 0;  // SO(n)/O(n); for Prod2 the SO(l) factor dimension is n
  std::vector<GenDef> gens;

  int gen_index(const std::string& name) const {
    for (size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == name) return (int)i;
    throw std::invalid_argument("no generator " + name);
  }
  bool operator==(const RingDef&) const = default;
};

using Ring = std::shared_ptr<const RingDef>;

inline Ring trivial_ring() {
  static Ring r = std::make_shared<RingDef>();
  return r;
}

// H(BSO(n)): odd n = 2k+1 -> p4,...,p_{4k}; even n = 2k -> p4,...,p_{2n-4}, E.
inline Ring so_ring(int n) {
  if (n < 2) throw std::invalid_argument("so_ring needs n >= 2");
  auto r = std::make_shared<RingDef>();
  r->kind = RingKind::SO;
  r->n = n;
  if (n % 2 == 1) {
    for (int d = 4; d <= 2 * n - 2; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
  } else {
    for (int d = 4; d <= 2 * n - 4; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
    r->gens.push_back({"E", n, -1});
  }
  return r;
}

// H(BO(n)) = Z2-invariants: for even n replace E by E^2 (stored as p_{2n}).
inline Ring o_ring(int n) {
  if (n < 2) throw std::invalid_argument("o_ring needs n >= 2");
  auto r = std::make_shared<RingDef>();
  r->kind = RingKind::O;
  r->n = n;
  int top = (n % 2 == 1) ? 2 * n - 2 : 2 * n - 4;
  for (int d = 4; d <= top; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
  if (n % 2 == 0) r->gens.push_back({"p" + std::to_string(2 * n), 2 * n, 1});  // = E^2
  return r;
}

// H(B(SO(2) x SO(l))): u of degree 2 plus the SO(l) generators (none for l=1).
inline Ring prod2_ring(int l) {
  if (l < 1) throw std::invalid_argument("prod2_ring needs l >= 1");
  auto r = std::make_shared<RingDef>();
  r->kind = RingKind::Prod2;
  r->n = l;
  r->gens.push_back({"u", 2, -1});
  if (l == 1) return r;
  if (l % 2 == 1) {
    for (int d = 4; d <= 2 * l - 2; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
  } else {
    for (int d = 4; d <= 2 * l - 4; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
    r->gens.push_back({"E", l, -1});
  }
  return r;
}

inline Ring localized(const Ring& src, const std::string& gen) {
  auto r = std::make_shared<RingDef>(*src);
  r->gens[r->gen_index(gen)].localized = true;
  return r;
}

// Target of the u-localized restriction maps: the generator set of
// H(B(SO(2) x SO(n-2)))_u with E_{n-2} exchanged for E_n = u E_{n-2}
// (n even), resp. P_{2n-6} exchanged for P_{2n-2} = u^2 P_{2n-6} (n odd).
inline Ring prod2_exchanged_ring(int n) {
  auto r = std::make_shared<RingDef>();
  r->kind = RingKind::Prod2;
  r->n = n - 2;
  r->gens.push_back({"u", 2, -1, true});
  if (n % 2 == 0) {
    for (int d = 4; d <= 2 * n - 8; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
    r->gens.push_back({"E", n, -1});
  } else {
    for (int d = 4; d <= 2 * n - 10; d += 4) r->gens.push_back({"p" + std::to_string(d), d, 1});
    r->gens.push_back({"p" + std::to_string(2 * n - 2), 2 * n - 2, 1});
  }
  return r;
}

// Exact-rational linear combination of monomials in the ring generators.
class RingElem {
 public:
  RingElem() : ring_(trivial_ring()) {}
  explicit RingElem(Ring ring) : ring_(std::move(ring)) {}
  RingElem(Ring ring, const Rat& c) : ring_(std::move(ring)) {
    if (c != 0) terms_[std::vector<int>(ring_->gens.size(), 0)] = c;
  }

  static RingElem scalar(const Rat& c) { return RingElem(trivial_ring(), c); }
  static RingElem monomial(Ring ring, const std::string& gen, int exp = 1, const Rat& c = 1) {
    RingElem e(ring);
    if (c == 0) return e;
    std::vector<int> m(e.ring_->gens.size(), 0);
    m[e.ring_->gen_index(gen)] = exp;
    e.check_exponents(m);
    e.terms_[m] = c;
    return e;
  }

  const Ring& ring() const { return ring_; }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int>& mono, const Rat& c) {
    if (c == 0) return;
    check_exponents(mono);
    auto it = terms_.find(mono);
    if (it == terms_.end()) terms_.emplace(mono, c);
    else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  RingElem& operator+=(const RingElem& o) {
    require_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  RingElem& operator-=(const RingElem& o) {
    require_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }

  friend RingElem operator*(const RingElem& a, const RingElem& b) {
    a.require_same_ring(b);
    RingElem out(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        std::vector<int> m(ma.size());
        for (size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
        out.add_term(m, ca * cb);
      }
    return out;
  }
  friend RingElem operator*(const Rat& c, RingElem e) {
    if (c == 0) return RingElem(e.ring_);
    for (auto& [m, v] : e.terms_) v *= c;
    return e;
  }
  friend RingElem operator-(RingElem e) { return Rat(-1) * std::move(e); }

  bool operator==(const RingElem& o) const { return terms_ == o.terms_; }

  int monomial_degree(const std::vector<int>& m) const {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * ring_->gens[i].degree;
    return d;
  }
  bool is_homogeneous(int* deg_out = nullptr) const {
    bool first = true;
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int md = monomial_degree(m);
      if (first) { d = md; first = false; }
      else if (md != d) return false;
    }
    if (deg_out) *deg_out = d;
    return true;
  }

  // sorted monomials, exact rationals: 3/4*p4^2*E^-1 + 1*u^2
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << rat_str(c);
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << "*" << ring_->gens[i].name;
        if (m[i] != 1) os << "^" << m[i];
      }
    }
    return os.str();
  }

 private:
  void require_same_ring(const RingElem& o) const {
    if (ring_ != o.ring_ && !(*ring_ == *o.ring_))
      throw std::invalid_argument("ring mismatch");
  }
  void check_exponents(const std::vector<int>& m) const {
    if (m.size() != ring_->gens.size()) throw std::invalid_argument("monomial arity mismatch");
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] < 0 && !ring_->gens[i].localized)
        throw std::invalid_argument("negative exponent on non-localized generator");
  }

  Ring ring_;
  std::map<std::vector<int>, Rat> terms_;
};

inline RingElem parse_ring_elem(const Ring& ring, const std::string& s) {
  RingElem out(ring);
  std::string t;
  for (char ch : s)
    if (!isspace((unsigned char)ch)) t += ch;
  if (t.empty() || t == "0") return out;
  // split on + and binary -
  size_t pos = 0;
  std::vector<std::string> parts;
  std::string cur;
  for (size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    if ((c == '+' || c == '-') && i > 0 && t[i - 1] != '^' && t[i - 1] != '*' && t[i - 1] != '/') {
      parts.push_back(cur);
      cur = (c == '-') ? "-" : "";
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  (void)pos;
  for (auto& part : parts) {
    if (part.empty()) continue;
    std::vector<int> mono(ring->gens.size(), 0);
    Rat coeff = 1;
    std::string frag;
    std::vector<std::string> frags;
    for (char c : part) {
      if (c == '*') { frags.push_back(frag); frag.clear(); }
      else frag += c;
    }
    frags.push_back(frag);
    for (auto& f : frags) {
      if (f.empty()) continue;
      if (isdigit((unsigned char)f[0]) || f[0] == '-' || f[0] == '+') {
        if (f == "-") coeff *= -1;
        else coeff *= rat_parse(f);
      } else {
        auto caret = f.find('^');
        std::string name = caret == std::string::npos ? f : f.substr(0, caret);
        int exp = caret == std::string::npos ? 1 : std::stoi(f.substr(caret + 1));
        mono[ring->gen_index(name)] += exp;
      }
    }
    out.add_term(mono, coeff);
  }
  return out;
}

// Z2 = pi_0(O(n)) action: trivial on the p's, by sign on Euler classes.
inline RingElem z2_act(const RingElem& x) {
  RingElem out(x.ring());
  for (const auto& [m, c] : x.terms()) {
    int flips = 0;
    for (size_t i = 0; i < m.size(); ++i)
      if (x.ring()->gens[i].z2sign < 0) flips += m[i];
    out.add_term(m, flips % 2 ? -c : c);
  }
  return out;
}

// Canonical image in the ring with the given generator formally inverted.
inline RingElem localize_at(const RingElem& x, const std::string& gen) {
  Ring loc = localized(x.ring(), gen);
  RingElem out(loc);
  for (const auto& [m, c] : x.terms()) out.add_term(m, c);
  return out;
}

enum class RestrictionMap {
  ToMinusOne,        // SO(n) -> SO(n-1)
  ToProduct2,        // SO(n) -> SO(2) x SO(n-2), plain generators
  ToProduct2Loc,     // same, after inverting u and exchanging generators
};

namespace detail {

inline RingElem ring_gen_or_one(const Ring& r, const std::string& name, int wanted_degree) {
  // P_0 = 1 convention: a requested p-generator of degree <= 0 is the unit.
  if (wanted_degree <= 0) return RingElem(r, 1);
  return RingElem::monomial(r, name);
}

}  // namespace detail

// The explicit generator assignments of the coefficient-ring restrictions.
// Sources must be SO(n) rings. P_0 = 1 throughout.
inline RingElem restrict(const RingElem& x, RestrictionMap map) {
  const Ring& src = x.ring();
  if (src->kind != RingKind::SO) throw std::invalid_argument("restrict: source must be SO(n)");
  int n = src->n;

  Ring dst;
  std::vector<RingElem> images;  // per source generator
  if (map == RestrictionMap::ToMinusOne) {
    dst = so_ring(n - 1);
    for (const auto& g : src->gens) {
      if (n % 2 == 1) {
        // p_{2n-2} -> E^2 (square of the Euler class of SO(n-1)); lower p's kept
        if (g.degree == 2 * n - 2) {
          RingElem E = RingElem::monomial(dst, "E");
          images.push_back(E * E);
        } else {
          images.push_back(RingElem::monomial(dst, g.name));
        }
      } else {
        // E -> 0; p's kept
        if (g.name == "E") images.push_back(RingElem(dst));
        else images.push_back(RingElem::monomial(dst, g.name));
      }
    }
  } else if (map == RestrictionMap::ToProduct2) {
    dst = prod2_ring(n - 2);
    RingElem u = RingElem::monomial(dst, "u");
    auto p_or_one = [&](int d) {
      return d <= 0 ? RingElem(dst, 1) : RingElem::monomial(dst, "p" + std::to_string(d));
    };
    for (const auto& g : src->gens) {
      if (n % 2 == 0) {
        if (g.name == "E") {
          images.push_back(u * RingElem::monomial(dst, "E"));
        } else if (g.degree == 2 * n - 4) {
          RingElem E = RingElem::monomial(dst, "E");
          images.push_back(u * u * p_or_one(2 * n - 8) + E * E);
        } else {
          images.push_back(u * u * p_or_one(g.degree - 4) + p_or_one(g.degree));
        }
      } else {
        if (g.degree == 2 * n - 2) {
          images.push_back(u * u * p_or_one(2 * n - 6));
        } else {
          images.push_back(u * u * p_or_one(g.degree - 4) + p_or_one(g.degree));
        }
      }
    }
  } else {  // ToProduct2Loc, exchanged generators over the u-localized ring
    dst = prod2_exchanged_ring(n);
    RingElem u = RingElem::monomial(dst, "u");
    RingElem uinv = RingElem::monomial(dst, "u", -1);
    auto p_or_one = [&](int d) {
      return d <= 0 ? RingElem(dst, 1) : RingElem::monomial(dst, "p" + std::to_string(d));
    };
    for (const auto& g : src->gens) {
      if (n % 2 == 0) {
        if (g.name == "E") {
          images.push_back(RingElem::monomial(dst, "E"));
        } else if (g.degree == 2 * n - 4) {
          RingElem E = RingElem::monomial(dst, "E");
          images.push_back(u * u * p_or_one(2 * n - 8) + uinv * uinv * E * E);
        } else {
          images.push_back(u * u * p_or_one(g.degree - 4) + p_or_one(g.degree));
        }
      } else {
        if (g.degree == 2 * n - 2) {
          images.push_back(RingElem::monomial(dst, "p" + std::to_string(2 * n - 2)));
        } else if (g.degree == 2 * n - 6) {
          images.push_back(u * u * p_or_one(2 * n - 10) +
                           uinv * uinv * RingElem::monomial(dst, "p" + std::to_string(2 * n - 2)));
        } else {
          images.push_back(u * u * p_or_one(g.degree - 4) + p_or_one(g.degree));
        }
      }
    }
  }

  RingElem out(dst);
  for (const auto& [m, c] : x.terms()) {
    RingElem term(dst, c);
    for (size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) term = term * images[i];
    out += term;
  }
  return out;
}

}  // namespace gcx
