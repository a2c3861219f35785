#include "gcx/forms.hpp"

#include <gtest/gtest.h>

using namespace gcx;

namespace {

// deterministic random torus-invariant form
EqForm sample_form(int n, SampleRng& rng) {
  int k = n % 2 ? (n - 1) / 2 : n / 2;
  int lo = n % 2 ? 1 : 0;
  int hi = n % 2 ? k : k - 1;
  EqForm f = EqForm::zero(n);
  for (int t = 0; t < 4; ++t) {
    std::map<std::string, int> monos;
    std::vector<std::string> dword;
    if (n % 2 && rng.below(2)) monos["s"] = 1 + (int)rng.below(2);
    for (int j = lo; j < hi; ++j)
      if (rng.below(2)) monos["sig" + std::to_string(j)] = 1;
    for (int j = lo; j <= hi; ++j) {
      if (rng.below(3) == 0) dword.push_back("dphi" + std::to_string(j));
      if (rng.below(3) == 0 && j < hi) dword.push_back("dsig" + std::to_string(j));
    }
    if (n % 2 && rng.below(2)) dword.push_back("ds");
    EqForm term = EqForm::zero(n);
    term.add(rat((long)rng.below(7) - 3, 1 + (long)rng.below(3)), monos, dword);
    f += term;
  }
  return f;
}

}  // namespace

TEST(Propagator, OddIdentity) {
  for (int n : {3, 5}) {
    auto omega = build_propagator(n);
    ASSERT_FALSE(omega.is_zero());
    EXPECT_TRUE(d_u(omega, n).is_zero()) << "n=" << n << ": " << d_u(omega, n).str();
  }
}

TEST(Propagator, EvenIdentity) {
  for (int n : {2, 4}) {
    auto omega = build_propagator(n);
    ASSERT_FALSE(omega.is_zero());
    EXPECT_EQ(d_u(omega, n), euler_value(n)) << "n=" << n;
  }
}

TEST(Propagator, TermCountN5) {
  // K ranges over subsets of {1, 2}: 4 ambient summands
  auto omega = build_propagator(5);
  EXPECT_FALSE(omega.is_zero());
  // the K = {1,2} term survives at the north pole with coefficient g/..*s
  auto np = north_pole(omega, 5);
  EXPECT_FALSE(np.is_zero());
}

TEST(NorthPole, LemmaValue) {
  auto omega = build_propagator(3);
  auto np = north_pole(omega, 3);
  // C * (1/2) g u_1
  EXPECT_EQ(np.str(), "1/2*g*C*u1");
  EXPECT_EQ(north_pole_substituted(np, 3), "1/2/(2pi)^1*u1");
  // constant form unchanged; sigma terms die
  auto c = EqForm::scalar(3, rat(5, 7));
  EXPECT_EQ(north_pole(c, 3).str(), "5/7");
  auto sig = EqForm::generator(3, "sig1");
  EXPECT_TRUE(north_pole(sig, 3).is_zero());
}

TEST(ContractEuler, DefinitionAndDerivation) {
  int n = 5;
  // iota_E(dsigma_j) = sigma_j
  auto f = contract_euler(EqForm::differential_gen(n, "dsig1"));
  EXPECT_EQ(f, EqForm::generator(n, "sig1"));
  // iota_E(dphi_j) = 0
  EXPECT_TRUE(contract_euler(EqForm::differential_gen(n, "dphi1")).is_zero());
  // iota_E(ds) = s/2
  EXPECT_EQ(contract_euler(EqForm::differential_gen(n, "ds")),
            rat(1, 2) * EqForm::generator(n, "s"));
  // iota_E(sum_j dsigma_j) = 1 on the simplex (ambient, then restrict)
  EqForm total = Rat(2) * (EqForm::generator(n, "s") * EqForm::differential_gen(n, "ds"));
  for (int j = 1; j <= 2; ++j) total += EqForm::differential_gen(n, "dsig" + std::to_string(j));
  auto restricted = forms_detail::restrict_to_simplex(contract_euler(total), n);
  EXPECT_EQ(restricted, EqForm::scalar(n, 1));
  // iota_E^2 = 0 and graded derivation of products
  SampleRng rng(808);
  for (int t = 0; t < 20; ++t) {
    EqForm a = sample_form(n, rng), b = sample_form(n, rng);
    EXPECT_TRUE(contract_euler(contract_euler(a)).is_zero());
    // derivation on homogeneous pieces: check on single terms
    for (const auto& [ka, ca] : a.terms()) {
      EqForm xa = EqForm::zero(n);
      xa.add(ca, ka.first, ka.second);
      int pa = (int)ka.second.size() % 2;
      auto lhs = contract_euler(xa * b);
      auto rhs = contract_euler(xa) * b;
      auto second = xa * contract_euler(b);
      rhs += pa ? Rat(-1) * second : second;
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Du, SquaresToZeroOnInvariantForms) {
  for (int n : {2, 3, 4, 5}) {
    SampleRng rng(909 + n);
    for (int t = 0; t < 15; ++t) {
      EqForm f = sample_form(n, rng);
      EXPECT_TRUE(d_u(d_u(f, n), n).is_zero()) << "n=" << n << " t=" << t;
    }
    EXPECT_TRUE(d_u(EqForm::scalar(n, 1), n).is_zero());
  }
}
