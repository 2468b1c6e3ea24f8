#include <doctest.h>

#include <bit>
#include <complex>

#include "qpsim/integrals.h"
#include "qpsim/ladder.h"
#include "qpsim/statevector.h"
#include "paths.h"
#include "test_helpers.h"

using namespace qpsim;
using testutil::Cplx;
using testutil::Mat;
using testutil::dense_sum;

namespace {

PauliSum ladder_op(int p, bool dagger, int r, Statistics st) {
  LadderTerm t;
  t.factors = {{p, dagger}};
  t.stats = st;
  return encode_ladder(t, r);
}

/// Dense fermionic creation operator with the sign convention of ordered
/// occupation-number kets: adag_p |n> = (-1)^(popcount of bits below p) |n'>.
Mat dense_creation(int p, int r) {
  const int dim = 1 << r;
  Mat m = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    if (n & (1 << p)) continue;
    const double sign = std::popcount(unsigned(n) & ((1u << p) - 1)) % 2 ? -1.0
                                                                         : 1.0;
    m(n | (1 << p), n) = sign;
  }
  return m;
}

IntegralSet spin_orbital_h2() {
  FcidumpData d = fcidump_read(testpaths::fixture("h2_sto3g.fcidump"));
  return spin_orbital_expand(d.ints);
}

constexpr double kH2Ehf = -1.1167593101814015;
constexpr double kH4Ehf = -2.1257047140687044;

}  // namespace

TEST_CASE("parity string images match dense creation matrices") {
  const int r = 3;
  for (int p = 0; p < r; ++p) {
    Mat cdag = dense_creation(p, r);
    CHECK((dense_sum(ladder_op(p, true, r, Statistics::kFermionic)) - cdag)
              .norm() < 1e-14);
    CHECK((dense_sum(ladder_op(p, false, r, Statistics::kFermionic)) -
           cdag.adjoint())
              .norm() < 1e-14);
  }
}

TEST_CASE("frozen parity string image of a single creation operator") {
  PauliSum img = ladder_op(1, true, 2, Statistics::kFermionic);
  REQUIRE_EQ(img.num_terms(), 2u);
  CHECK_EQ(img.terms()[0].letters(), "ZX");
  CHECK(std::abs(img.terms()[0].coefficient() - Cplx(0.5)) < 1e-15);
  CHECK_EQ(img.terms()[1].letters(), "ZY");
  CHECK(std::abs(img.terms()[1].coefficient() - Cplx(0.0, -0.5)) < 1e-15);
}

TEST_CASE("bare images drop the parity strings") {
  PauliSum img = ladder_op(1, true, 2, Statistics::kQubitParticle);
  REQUIRE_EQ(img.num_terms(), 2u);
  CHECK_EQ(img.terms()[0].letters(), "IX");
  CHECK_EQ(img.terms()[1].letters(), "IY");
  Mat raise = Mat::Zero(2, 2);
  raise(1, 0) = 1.0;
  Mat want = testutil::kron(raise, Mat::Identity(2, 2));
  CHECK((dense_sum(img) - want).norm() < 1e-14);
}

TEST_CASE("products of factors encode as operator products") {
  const int r = 3;
  LadderTerm t;
  t.coeff = Cplx(0.25, -1.0);
  t.factors = {{2, true}, {0, false}};
  t.stats = Statistics::kFermionic;
  Mat want = t.coeff * dense_creation(2, r) * dense_creation(0, r).adjoint();
  CHECK((dense_sum(encode_ladder(t, r)) - want).norm() < 1e-14);
}

TEST_CASE("fermionic images satisfy the anticommutation relations") {
  const int r = 4;
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      for (auto [da, db] : {std::pair{true, true}, {false, false}}) {
        PauliSum a = ladder_op(p, da, r, Statistics::kFermionic);
        PauliSum b = ladder_op(q, db, r, Statistics::kFermionic);
        CHECK_EQ((a * b + b * a).num_terms(), 0u);
      }
      PauliSum a = ladder_op(p, true, r, Statistics::kFermionic);
      PauliSum b = ladder_op(q, false, r, Statistics::kFermionic);
      PauliSum anti = a * b + b * a;
      if (p == q) {
        REQUIRE_EQ(anti.num_terms(), 1u);
        CHECK(anti.terms()[0].is_identity());
        CHECK(std::abs(anti.terms()[0].coefficient() - Cplx(1.0)) < 1e-15);
      } else {
        CHECK_EQ(anti.num_terms(), 0u);
      }
    }
}

TEST_CASE("qubit particle images keep the on site algebra but commute across sites") {
  const int r = 4;
  const Statistics st = Statistics::kQubitParticle;
  for (int p = 0; p < r; ++p) {
    PauliSum up = ladder_op(p, true, r, st);
    PauliSum dn = ladder_op(p, false, r, st);
    PauliSum anti = up * dn + dn * up;
    REQUIRE_EQ(anti.num_terms(), 1u);
    CHECK(anti.terms()[0].is_identity());
    CHECK(std::abs(anti.terms()[0].coefficient() - Cplx(1.0)) < 1e-15);
    CHECK_EQ((up * up).num_terms(), 0u);
    for (int q = 0; q < r; ++q) {
      if (q == p) continue;
      for (bool da : {true, false})
        for (bool db : {true, false}) {
          PauliSum a = ladder_op(p, da, r, st);
          PauliSum b = ladder_op(q, db, r, st);
          CHECK_EQ((a * b - b * a).num_terms(), 0u);
        }
    }
  }
}

TEST_CASE("number operator images agree between the two encodings") {
  const int r = 4;
  for (int p = 0; p < r; ++p) {
    LadderTerm t;
    t.factors = {{p, true}, {p, false}};
    t.stats = Statistics::kFermionic;
    PauliSum ferm = encode_ladder(t, r);
    t.stats = Statistics::kQubitParticle;
    PauliSum bare = encode_ladder(t, r);
    REQUIRE_EQ(ferm.num_terms(), bare.num_terms());
    for (size_t k = 0; k < ferm.num_terms(); ++k) {
      CHECK(same_letters(ferm.terms()[k], bare.terms()[k]));
      CHECK(std::abs(ferm.terms()[k].coefficient() -
                     bare.terms()[k].coefficient()) < 1e-15);
    }
  }
}

TEST_CASE("encoding validations reject malformed input") {
  LadderTerm t;
  t.factors = {{0, true}};
  t.stats = Statistics::kQubitParticle;
  CHECK_THROWS_AS(jordan_wigner(t, 2), std::invalid_argument);
  t.stats = Statistics::kFermionic;
  CHECK_THROWS_AS(encode_ladder(t, 0), std::invalid_argument);
  t.factors = {{5, true}};
  CHECK_THROWS_AS(encode_ladder(t, 2), std::invalid_argument);
}

TEST_CASE("generator tensors populate all symmetry images") {
  GeneratorTensor a(4);
  const Cplx v(0.3, 0.4);
  a.set_element(0, 1, 2, 3, v);
  CHECK(std::abs(a.at(0, 1, 2, 3) - v) < 1e-15);
  CHECK(std::abs(a.at(1, 0, 2, 3) + v) < 1e-15);
  CHECK(std::abs(a.at(0, 1, 3, 2) + v) < 1e-15);
  CHECK(std::abs(a.at(1, 0, 3, 2) - v) < 1e-15);
  CHECK(std::abs(a.at(2, 3, 0, 1) + std::conj(v)) < 1e-15);
  CHECK(std::abs(a.at(3, 2, 0, 1) - std::conj(v)) < 1e-15);
  CHECK(std::abs(a.at(2, 3, 1, 0) - std::conj(v)) < 1e-15);
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(8.0) * std::abs(v))
                                  .epsilon(1e-13));
  CHECK_NOTHROW(a.validate());
  CHECK_THROWS_AS(a.set_element(1, 0, 2, 3, v), std::invalid_argument);
  a.a[((size_t(0) * 4 + 1) * 4 + 2) * 4 + 3] += 0.5;
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
}

TEST_CASE("generator images are anti hermitian in both encodings") {
  GeneratorTensor a(4);
  a.set_element(0, 1, 2, 3, Cplx(0.0, 0.7));
  a.set_element(0, 2, 1, 3, Cplx(0.2, -0.1));
  for (Statistics st : {Statistics::kFermionic, Statistics::kQubitParticle}) {
    PauliSum g = build_generator(a, st);
    CHECK_EQ((g + g.adjoint()).num_terms(), 0u);
    for (const auto& term : g.terms())
      CHECK(std::abs(term.coefficient().real()) < 1e-15);
  }
}

TEST_CASE("double excitation term counts and weights depend on the encoding") {
  GeneratorTensor adj(4);
  adj.set_element(0, 1, 2, 3, Cplx(0.0, 1.0));
  CHECK_EQ(build_generator(adj, Statistics::kFermionic).num_terms(), 8u);
  CHECK_EQ(build_generator(adj, Statistics::kFermionic).max_weight(), 4);
  CHECK_EQ(build_generator(adj, Statistics::kQubitParticle).num_terms(), 8u);
  CHECK_EQ(build_generator(adj, Statistics::kQubitParticle).max_weight(), 4);

  GeneratorTensor spread(8);
  spread.set_element(0, 2, 4, 6, Cplx(0.0, 1.0));
  PauliSum ferm = build_generator(spread, Statistics::kFermionic);
  PauliSum bare = build_generator(spread, Statistics::kQubitParticle);
  CHECK_EQ(ferm.num_terms(), 8u);
  CHECK_EQ(ferm.max_weight(), 6);
  CHECK_EQ(bare.num_terms(), 8u);
  CHECK_EQ(bare.max_weight(), 4);
}

TEST_CASE("hamiltonian image reproduces the mean field energies") {
  IntegralSet so2 = spin_orbital_h2();
  PauliSum h2 = hamiltonian_pauli(so2);
  CHECK(h2.is_hermitian());
  StateVector hf2 = StateVector::basis_state(4, {0, 1});
  Cplx e2 = expectation(hf2, h2);
  CHECK(std::abs(e2.imag()) < 1e-12);
  CHECK(e2.real() + so2.e_nuc == doctest::Approx(kH2Ehf).epsilon(1e-10));

  FcidumpData d4 = fcidump_read(testpaths::fixture("h4_sto3g.fcidump"));
  IntegralSet so4 = spin_orbital_expand(d4.ints);
  PauliSum h4 = hamiltonian_pauli(so4);
  CHECK(h4.is_hermitian());
  StateVector hf4 = StateVector::basis_state(8, {0, 1, 2, 3});
  CHECK(expectation(hf4, h4).real() + so4.e_nuc ==
        doctest::Approx(kH4Ehf).epsilon(1e-10));
}

TEST_CASE("hamiltonian image rejects spatial orbital input") {
  FcidumpData d = fcidump_read(testpaths::fixture("h2_sto3g.fcidump"));
  CHECK_THROWS_AS(hamiltonian_pauli(d.ints), std::invalid_argument);
}
