#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aloop/constructions.hpp"
#include "aloop/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace aloop;

namespace {

BitMatrix beta_at(const BetaMap& b, std::uint64_t i) {
  BitMatrix m(b.k_dim, b.k_dim);
  for (std::size_t l = 0; l < b.h_dim; ++l)
    if ((i >> l) & 1u) m += b.matrices[l];
  return m;
}

// (a + i)(b + j) = (a + b + beta(j) a + beta(i) b) + (i + j), straight from the formula.
oracle::Table beta_table(const BetaMap& b) {
  const std::uint64_t kmask = (std::uint64_t{1} << b.k_dim) - 1, n = std::uint64_t{1} << (b.k_dim + b.h_dim);
  oracle::Table t(n, std::vector<int>(n));
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) {
      const std::uint64_t a = x & kmask, i = x >> b.k_dim, c = y & kmask, j = y >> b.k_dim;
      const std::uint64_t k = a ^ c ^ beta_at(b, j).apply_word(a) ^ beta_at(b, i).apply_word(c);
      t[x][y] = static_cast<int>(k | ((i ^ j) << b.k_dim));
    }
  return t;
}

PhiFamily identity_family(std::size_t k, std::size_t h) {
  PhiFamily phi{k, h, {}};
  for (std::size_t x = 0; x < (std::size_t{1} << (2 * h)); ++x) phi.members.push_back(BitMatrix::identity(k));
  return phi;
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("lie_to_loop") {
  const FiniteLoop g = lie_to_loop(make_abelian(3));
  for (Element a = 0; a < 8; ++a)
    for (Element b = 0; b < 8; ++b) CHECK(g.mul(a, b) == (a ^ b));
  const FiniteLoop h = lie_to_loop(make_heisenberg());
  CHECK(h.order() == 8);
  CHECK(oracle::associative(oracle::Loop(h.to_rows())));
  LieAlgebraF2 bad(2);
  bad.set_basis_bracket(0, 1, 0b10);
  CHECK_THROWS_AS(lie_to_loop(bad), W1Violation);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 4;
    LieAlgebraF2 l(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) l.set_basis_bracket(i, j, (rng() & ((1u << n) - 1)) & ~((2u << j) - 1));
    if (!satisfies_jacobi(l)) continue;
    const FiniteLoop q = lie_to_loop(l);
    CHECK(q.to_rows() == oracle::lie_loop_table(l));
    for (std::uint64_t x = 0; x < q.order(); ++x)
      for (std::uint64_t z = 0; z < q.order(); ++z) CHECK(lie_left_divide(l, x, z) == q.left_div(x, z));
    CHECK(bracket_annihilator_of_derived(l) == oracle::bracket_annihilator(l));
  }
}

TEST_CASE("phi family validation") {
  CHECK_NOTHROW(validate_phi_family(identity_family(2, 1)));
  CHECK_NOTHROW(validate_phi_family(phi_from_beta(example2_data(2, 1).beta)));
  PhiFamily asym = phi_from_beta(example2_data(4, 2).beta);
  const BitMatrix swap = BitMatrix::from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  asym.members[1 * 4 + 2] = asym.at(1, 2) * swap;
  try {
    validate_phi_family(asym);
    FAIL("expected PhiConditionError");
  } catch (const PhiConditionError& e) {
    CHECK(e.condition() == "symmetry");
  }
  PhiFamily not_id = identity_family(2, 1);
  not_id.members[0 * 2 + 1] = BitMatrix::from_rows({{0, 1}, {1, 0}});
  not_id.members[1 * 2 + 0] = not_id.members[1];
  try {
    validate_phi_family(not_id);
    FAIL("expected PhiConditionError");
  } catch (const PhiConditionError& e) {
    CHECK(e.condition() == "identity");
  }
}

TEST_CASE("nuclear semidirect products") {
  const FiniteLoop g = nuclear_semidirect(identity_family(2, 2));
  for (Element a = 0; a < 16; ++a)
    for (Element b = 0; b < 16; ++b) CHECK(g.mul(a, b) == (a ^ b));
  const BetaMap b = example2_data(2, 1).beta;
  CHECK_NOTHROW(u_isomorphism_check(b));
  const FiniteLoop semi = nuclear_semidirect(phi_from_beta(b));
  CHECK(oracle::center(oracle::Loop(semi.to_rows())) == predicted_center(b).elements());
}

TEST_CASE("beta construction") {
  BetaMap zero{2, 2, {BitMatrix(2, 2), BitMatrix(2, 2)}};
  const FiniteLoop z = beta_loop(zero);
  for (Element a = 0; a < 16; ++a)
    for (Element c = 0; c < 16; ++c) CHECK(z.mul(a, c) == (a ^ c));

  const Example2Data d = example2_data(2, 1);
  CHECK(d.sigma == 0b10);
  const FiniteLoop q = beta_loop(d.beta);
  // (1 + 1)(omega + 1) = omega + 0, elements encoded as a | i << 2
  CHECK(q.mul(0b101, 0b110) == 0b010);

  BetaMap singular{2, 2, {}};
  const BitMatrix a = BitMatrix::from_rows({{0, 1}, {1, 1}});
  singular.matrices = {a, a * a};
  CHECK(code_of([&] { validate_beta(singular); }) == ErrorCode::kSingularIdPlusBeta);

  BetaMap noncommuting{2, 2, {BitMatrix::from_rows({{0, 1}, {0, 0}}), BitMatrix::from_rows({{0, 0}, {1, 0}})}};
  CHECK(code_of([&] { validate_beta(noncommuting); }) == ErrorCode::kNonCommutingBeta);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const BetaMap b = gen::random_beta(rng, 1 + rng() % 4, 1 + rng() % 3, rng() & 1u);
    const FiniteLoop loop = beta_loop(b);
    CHECK(loop.to_rows() == beta_table(b));
    CHECK(lie_to_loop(beta_lie_algebra(b)) == loop);
    CHECK(oracle::automorphic(oracle::Loop(loop.to_rows())));
  }
}

TEST_CASE("predicted center") {
  BetaMap zero{2, 1, {BitMatrix(2, 2)}};
  CHECK(predicted_center(zero).elements().size() == 8);
  CHECK(predicted_center(example2_data(2, 1).beta).elements() == std::vector<Element>{0});
  // beta(e1)^2 = 0: the loop is the Heisenberg group, central all over,
  // although beta itself only kills e0
  BetaMap nil{2, 1, {BitMatrix::from_rows({{0, 1}, {0, 0}})}};
  const PredictedCenter pc = predicted_center(nil);
  CHECK(pc.k_kernel_basis.size() == 1);
  CHECK(pc.k_basis.size() == 2);
  CHECK(pc.h_part == std::vector<std::uint64_t>{0, 1});
  CHECK(pc.elements().size() == 8);
  CHECK(pc.elements() == oracle::center(oracle::Loop(beta_loop(nil).to_rows())));
  // shift e2 -> e1 -> e0: partial center {0, e0, e1, e0 + e1}
  BetaMap shift{3, 1, {BitMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})}};
  const PredictedCenter ps = predicted_center(shift);
  CHECK(ps.k_kernel_basis.size() == 1);
  CHECK(ps.elements() == std::vector<Element>{0, 1, 2, 3});
  CHECK(ps.elements() == oracle::center(oracle::Loop(beta_loop(shift).to_rows())));
}

TEST_CASE("property: u isomorphism and center formula on random beta") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 60; ++t) {
    const BetaMap b = gen::random_beta(rng, 1 + rng() % 3, 1 + rng() % 2, rng() % 3 == 0);
    CHECK_NOTHROW(u_isomorphism_check(b));
    CHECK_NOTHROW(validate_phi_family(phi_from_beta(b)));
    CHECK(predicted_center(b).elements() == oracle::center(oracle::Loop(beta_loop(b).to_rows())));
  }
}

TEST_CASE("example 1") {
  const FieldF2m gf4(2);
  BitMatrix zero(2, 1);
  CHECK(code_of([&] { example1_beta(gf4, zero); }) == ErrorCode::kNotInjective);
  BitMatrix one(2, 1);
  one.set(0, 0);
  CHECK(code_of([&] { example1_beta(gf4, one); }) == ErrorCode::kUnitInImage);
  const FieldF2m gf8(3);
  BitMatrix via_sum(3, 2);  // delta(e1) = x, delta(e2) = x + 1, so delta(e1 + e2) = 1
  via_sum.set(1, 0);
  via_sum.set(0, 1);
  via_sum.set(1, 1);
  CHECK(code_of([&] { example1_beta(gf8, via_sum); }) == ErrorCode::kUnitInImage);
  BitMatrix omega(2, 1);
  omega.set(1, 0);
  CHECK(example1_loop(gf4, omega) == example2_loop(2, 1));
}

TEST_CASE("example 2") {
  const FiniteLoop q = example2_loop(2, 1);
  const oracle::Loop o(q.to_rows());
  CHECK(q.order() == 8);
  CHECK_FALSE(oracle::associative(o));
  CHECK(oracle::center(o) == std::vector<Element>{0});
  const FiniteLoop big = example2_loop(4, 2);
  CHECK(big.order() == 64);
  CHECK(oracle::center(oracle::Loop(big.to_rows())) == std::vector<Element>{0});
  CHECK(code_of([] { example2_loop(4, 3); }) == ErrorCode::kBadSubfield);
  CHECK(code_of([] { example2_loop(2, 2); }) == ErrorCode::kBadSubfield);
}

TEST_CASE("X^2 = 0 family") {
  CHECK(code_of([] { hora_jed_witness({BitMatrix(2, 2)}, {{BitMatrix(2, 2)}}); }) == ErrorCode::kDegenerateX);
  const BitMatrix e01 = BitMatrix::from_rows({{0, 1}, {0, 0}});
  const BitMatrix e10 = BitMatrix::from_rows({{0, 0}, {1, 0}});
  CHECK(code_of([&] { hora_jed_witness({e01, e10}, {{e01}}); }) == ErrorCode::kXSquareNonzero);
  CHECK(code_of([&] { hora_jed_witness({e01}, {{e10}}); }) == ErrorCode::kInvalidArgument);

  const HoraJedWitness w = hora_jed_witness({e01}, {{e01}});
  CHECK(w.loop.order() == 8);
  CHECK(w.fixed_vector == 0b01);
  const auto z = oracle::center(oracle::Loop(w.loop.to_rows()));
  CHECK(z.size() > 1);
  CHECK(std::find(z.begin(), z.end(), w.central) != z.end());

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HoraJedInput in = random_hora_jed_input(2 + seed % 3, 1 + seed % 2, seed);
    for (const auto& x : in.x_set)
      for (const auto& y : in.x_set) CHECK((x * y).is_zero());
    const HoraJedWitness r = hora_jed_witness(in.x_set, in.m_basis);
    const auto zr = oracle::center(oracle::Loop(r.loop.to_rows()));
    CHECK(zr.size() > 1);
    CHECK(std::find(zr.begin(), zr.end(), r.central) != zr.end());
    CHECK(oracle::automorphic(oracle::Loop(r.loop.to_rows())));
  }
}

TEST_CASE("commutative automorphic exponent 2") {
  CHECK(is_commutative_automorphic_exp2(example2_loop(2, 1)));
  CHECK_FALSE(is_commutative_automorphic_exp2(FiniteLoop::from_rows(
      {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0}, {4, 2, 0, 1, 3}})));
}
