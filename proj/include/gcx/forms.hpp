#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gcx/char_ring.hpp"

namespace gcx {

// Symbolic equivariant exterior calculus on the torus-parameterized sphere.
// Generators (n odd, k = (n-1)/2): s (= sqrt(sigma_0)), sigma_1..sigma_k,
// u_1..u_k, g (formal sqrt(pi)), C (normalization); differentials ds,
// dsigma_j, dphi_j. For n even (k = n/2, k' = k-1): sigma_0..sigma_{k'},
// u_0..u_{k'}, dphi_0..dphi_{k'}. The simplex relation eliminates the last
// sigma by substitution; the Euler contraction is computed on the ambient
// generators before the substitution.
struct EqTerm {
  Rat coeff;
  std::map<std::string, int> monos;  // commuting part: s, sigma_j, u_j, g, C
  std::vector<std::string> dword;    // exterior word, kept sorted with sign
};

class EqForm {
 public:
  int n = 3;

  const std::map<std::pair<std::map<std::string, int>, std::vector<std::string>>, Rat>&
  terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  static EqForm zero(int n) {
    EqForm f;
    f.n = n;
    return f;
  }
  static EqForm scalar(int n, const Rat& c) {
    EqForm f;
    f.n = n;
    f.add(c, {}, {});
    return f;
  }
  static EqForm generator(int n, const std::string& name, int exp = 1) {
    EqForm f;
    f.n = n;
    f.add(1, {{name, exp}}, {});
    return f;
  }
  static EqForm differential_gen(int n, const std::string& dname) {
    EqForm f;
    f.n = n;
    f.add(1, {}, {dname});
    return f;
  }

  void add(Rat c, std::map<std::string, int> monos, std::vector<std::string> dword) {
    if (c == 0) return;
    for (auto it = monos.begin(); it != monos.end();)
      it = it->second == 0 ? monos.erase(it) : std::next(it);
    // sort the exterior word, tracking the sign; repeated letters vanish
    int swaps = 0;
    for (size_t a = 0; a + 1 < dword.size(); ++a)
      for (size_t b = 0; b + 1 < dword.size() - a; ++b)
        if (dword[b + 1] < dword[b]) {
          std::swap(dword[b], dword[b + 1]);
          ++swaps;
        }
    for (size_t a = 0; a + 1 < dword.size(); ++a)
      if (dword[a] == dword[a + 1]) return;
    if (swaps % 2) c = -c;
    auto key = std::make_pair(std::move(monos), std::move(dword));
    auto it = terms_.find(key);
    if (it == terms_.end()) terms_.emplace(std::move(key), c);
    else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  EqForm& operator+=(const EqForm& o) {
    for (const auto& [k, c] : o.terms_) add(c, k.first, k.second);
    return *this;
  }
  friend EqForm operator+(EqForm a, const EqForm& b) { return a += b; }
  friend EqForm operator-(EqForm a, const EqForm& b) {
    for (const auto& [k, c] : b.terms_) a.add(-c, k.first, k.second);
    return a;
  }
  friend EqForm operator*(const Rat& c, EqForm f) {
    EqForm out = EqForm::zero(f.n);
    for (const auto& [k, v] : f.terms_) out.add(c * v, k.first, k.second);
    return out;
  }
  friend EqForm operator*(const EqForm& a, const EqForm& b) {
    EqForm out = EqForm::zero(a.n);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        // Koszul sign: kb's monomial part is even; moving kb.dword past
        // nothing extra since we append and re-sort inside add()
        std::map<std::string, int> monos = ka.first;
        for (const auto& [name, e] : kb.first) monos[name] += e;
        std::vector<std::string> dword = ka.second;
        dword.insert(dword.end(), kb.second.begin(), kb.second.end());
        out.add(ca * cb, std::move(monos), std::move(dword));
      }
    return out;
  }
  bool operator==(const EqForm& o) const { return terms_ == o.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << rat_str(c);
      for (const auto& [name, e] : k.first) {
        os << "*" << name;
        if (e != 1) os << "^" << e;
      }
      for (const auto& d : k.second) os << "*" << d;
    }
    return os.str();
  }

 private:
  std::map<std::pair<std::map<std::string, int>, std::vector<std::string>>, Rat> terms_;
};

namespace forms_detail {

inline int sphere_k(int n) { return n % 2 ? (n - 1) / 2 : n / 2; }

// exterior derivative: d(s) = ds, d(sigma_j) = dsigma_j, torus-invariant
// functions only (no phi dependence); graded Leibniz
inline EqForm d(const EqForm& f) {
  EqForm out = EqForm::zero(f.n);
  for (const auto& [k, c] : f.terms()) {
    for (const auto& [name, e] : k.first) {
      std::string dname;
      if (name == "s") dname = "ds";
      else if (name.rfind("sig", 0) == 0) dname = "d" + name;
      else continue;
      // d(x^e * rest) = e x^{e-1} dx * rest
      std::map<std::string, int> monos = k.first;
      monos[name] -= 1;
      std::vector<std::string> dword;
      dword.push_back(dname);
      dword.insert(dword.end(), k.second.begin(), k.second.end());
      out.add(Rat(e) * c, monos, dword);
    }
  }
  return out;
}

// contraction dual to dphi_j (graded derivation, kills everything else)
inline EqForm iota_phi(const EqForm& f, int j) {
  EqForm out = EqForm::zero(f.n);
  std::string target = "dphi" + std::to_string(j);
  for (const auto& [k, c] : f.terms()) {
    for (size_t pos = 0; pos < k.second.size(); ++pos) {
      if (k.second[pos] != target) continue;
      std::vector<std::string> dword;
      for (size_t t = 0; t < k.second.size(); ++t)
        if (t != pos) dword.push_back(k.second[t]);
      out.add(pos % 2 ? -c : c, k.first, dword);
    }
  }
  return out;
}

}  // namespace forms_detail

// contraction with the Euler vector field sum sigma_j d/dsigma_j, extended
// over s = sqrt(sigma_0) by the chain rule: iota_E(ds) = s/2,
// iota_E(dsigma_j) = sigma_j, iota_E(dphi_j) = 0
inline EqForm contract_euler(const EqForm& f) {
  EqForm out = EqForm::zero(f.n);
  for (const auto& [k, c] : f.terms()) {
    for (size_t pos = 0; pos < k.second.size(); ++pos) {
      const std::string& letter = k.second[pos];
      std::map<std::string, int> monos = k.first;
      Rat factor = 1;
      if (letter == "ds") {
        monos["s"] += 1;
        factor = rat(1, 2);
      } else if (letter.rfind("dsig", 0) == 0) {
        monos[letter.substr(1)] += 1;
      } else {
        continue;
      }
      std::vector<std::string> dword;
      for (size_t t = 0; t < k.second.size(); ++t)
        if (t != pos) dword.push_back(k.second[t]);
      out.add((pos % 2 ? -factor : factor) * c, monos, dword);
    }
  }
  return out;
}

// d_u = d + sum_j u_j iota_j with iota_j(dphi_j) = 1
inline EqForm d_u(const EqForm& f, int n) {
  EqForm out = forms_detail::d(f);
  int k = forms_detail::sphere_k(n);
  int lo = n % 2 ? 1 : 0;
  int hi = n % 2 ? k : k - 1;
  for (int j = lo; j <= hi; ++j) {
    EqForm uj = EqForm::generator(n, "u" + std::to_string(j));
    out += uj * forms_detail::iota_phi(f, j);
  }
  return out;
}

namespace forms_detail {

// substitute the eliminated simplex coordinate:
// n odd:  sigma_k  = 1 - s^2 - sum_{0<j<k} sigma_j,
//         dsigma_k = -2 s ds - sum dsigma_j
// n even: sigma_{k'} = 1 - sum_{j<k'} sigma_j, dsigma_{k'} = -sum dsigma_j
inline EqForm restrict_to_simplex(const EqForm& f, int n) {
  int k = sphere_k(n);
  int last = n % 2 ? k : k - 1;
  std::string sig_last = "sig" + std::to_string(last);
  std::string dsig_last = "dsig" + std::to_string(last);

  EqForm sig_sub = EqForm::scalar(n, 1);
  if (n % 2 == 1) sig_sub = sig_sub - EqForm::generator(n, "s", 2);
  for (int j = (n % 2 ? 1 : 0); j < last; ++j)
    sig_sub = sig_sub - EqForm::generator(n, "sig" + std::to_string(j));

  EqForm dsig_sub = EqForm::zero(n);
  if (n % 2 == 1) {
    EqForm term = EqForm::generator(n, "s");
    term = Rat(-2) * (term * EqForm::differential_gen(n, "ds"));
    dsig_sub += term;
  }
  for (int j = (n % 2 ? 1 : 0); j < last; ++j)
    dsig_sub = dsig_sub - EqForm::differential_gen(n, "dsig" + std::to_string(j));

  EqForm out = EqForm::zero(n);
  for (const auto& [key, c] : f.terms()) {
    EqForm term = EqForm::scalar(n, c);
    for (const auto& [name, e] : key.first) {
      if (name == sig_last) {
        for (int t = 0; t < e; ++t) term = term * sig_sub;
      } else {
        term = term * EqForm::generator(n, name, e);
      }
    }
    for (const auto& dl : key.second) {
      if (dl == dsig_last) term = term * dsig_sub;
      else term = term * EqForm::differential_gen(n, dl);
    }
    out += term;
  }
  return out;
}

// (m - 1/2)! = (2m)!/(4^m m!) g with g = sqrt(pi); defined for m >= -?
inline std::pair<Rat, int> half_factorial(int m) {
  // returns (rational, power of g); m >= 0 gives (m-1/2)!, m = 0 -> g... use
  // x! = Gamma(x+1): (m - 1/2)! for m >= 0
  Rat r = 1;
  for (int t = 1; t <= m; ++t) r *= rat(2 * t - 1, 2);  // (1/2)(3/2)...(m-1/2)
  return {r, 1};
}

}  // namespace forms_detail

// The closed-form equivariant propagator. C is kept symbolic; half-integer
// factorials expand in Q[g].
inline EqForm build_propagator(int n) {
  if (n < 2) throw std::invalid_argument("build_propagator needs n >= 2");
  int k = forms_detail::sphere_k(n);
  EqForm ambient = EqForm::zero(n);
  if (n % 2 == 1) {
    // C iota_E ( ds * sum_K (|Kbar| - 1/2)! u^K (dphi dsigma)^Kbar ), K in {1..k}
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::map<std::string, int> monos;
      std::vector<std::string> dword;
      dword.push_back("ds");
      int nbar = 0;
      for (int j = 1; j <= k; ++j) {
        if (mask & (1u << (j - 1))) {
          monos["u" + std::to_string(j)] += 1;
        } else {
          ++nbar;
          dword.push_back("dphi" + std::to_string(j));
          dword.push_back("dsig" + std::to_string(j));
        }
      }
      auto [q, gpow] = forms_detail::half_factorial(nbar);
      monos["g"] += gpow;
      monos["C"] += 0;
      EqForm term = EqForm::zero(n);
      term.add(q, monos, dword);
      ambient += term;
    }
  } else {
    int kp = k - 1;
    for (unsigned mask = 0; mask + 1 < (1u << (kp + 1)); ++mask) {  // K proper subset
      std::map<std::string, int> monos;
      std::vector<std::string> dword;
      int nbar = 0;
      for (int j = 0; j <= kp; ++j) {
        if (mask & (1u << j)) {
          monos["u" + std::to_string(j)] += 1;
        } else {
          ++nbar;
          dword.push_back("dphi" + std::to_string(j));
          dword.push_back("dsig" + std::to_string(j));
        }
      }
      EqForm term = EqForm::zero(n);
      term.add(factorial(nbar - 1), monos, dword);
      ambient += term;
    }
  }
  EqForm contracted = contract_euler(ambient);
  EqForm restricted = forms_detail::restrict_to_simplex(contracted, n);
  return EqForm::generator(n, "C") * restricted;
}

// the Euler-class value -C u_0 ... u_{k'} (n even)
inline EqForm euler_value(int n) {
  EqForm e = Rat(-1) * EqForm::generator(n, "C");
  for (int j = 0; j <= n / 2 - 1; ++j)
    e = e * EqForm::generator(n, "u" + std::to_string(j));
  return e;
}

// substitute sigma_0 = 1 (s = 1), sigma_j = 0, kill all differentials;
// returns the coefficient polynomial in Q[g, C, u's]
inline RingElem north_pole(const EqForm& f, int n) {
  if (n % 2 == 0) throw std::invalid_argument("north_pole needs odd n");
  int k = forms_detail::sphere_k(n);
  auto ring = std::make_shared<RingDef>();
  ring->gens.push_back({"g", 1, 1});
  ring->gens.push_back({"C", 0, 1});
  for (int j = 1; j <= k; ++j) ring->gens.push_back({"u" + std::to_string(j), 2, 1});
  RingElem out(ring);
  for (const auto& [key, c] : f.terms()) {
    if (!key.second.empty()) continue;  // differentials die
    bool vanishes = false;
    std::vector<int> mono(ring->gens.size(), 0);
    for (const auto& [name, e] : key.first) {
      if (name.rfind("sig", 0) == 0) { vanishes = true; break; }  // sigma_j = 0
      if (name == "s") continue;                                  // s = 1
      for (size_t gi = 0; gi < ring->gens.size(); ++gi)
        if (ring->gens[gi].name == name) mono[gi] += e;
    }
    if (!vanishes) out.add_term(mono, c);
  }
  return out;
}

// Lemma value u_1...u_k / (2 (2pi)^k) after substituting C = 1/(g (2pi)^k)
// and g^2 = pi; returned over the ring Q[twopi^-1, u's] as a string check
inline std::string north_pole_substituted(const RingElem& np, int n) {
  // np lives in Q[g, C, u...]; substitute C -> 1/(g*twopi^k), g^2 -> pi.
  // For the engine's report we express the result as q * u-monomial / (2pi)^k
  // when the g's cancel; otherwise keep symbols.
  int k = forms_detail::sphere_k(n);
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : np.terms()) {
    int gpow = m[0], cpow = m[1];
    // g^gpow * C^cpow = g^{gpow - cpow} / (2pi)^{k cpow}
    int geff = gpow - cpow;
    if (geff != 0) return np.str();  // leave symbolic
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << "/(2pi)^" << k * cpow;
    for (size_t gi = 2; gi < np.ring()->gens.size(); ++gi)
      if (m[gi]) {
        os << "*" << np.ring()->gens[gi].name;
        if (m[gi] != 1) os << "^" << m[gi];
      }
  }
  return first ? "0" : os.str();
}

}  // namespace gcx
