#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aloop/error.hpp"
#include "aloop/gf2.hpp"

using namespace aloop;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1u) m.set(i, j);
  return m;
}

// Schoolbook product in GF(2)[x], reduced by long division.
std::uint32_t slow_field_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned m) {
  std::uint64_t p = 0;
  for (unsigned k = 0; k < 32; ++k)
    if ((b >> k) & 1u) p ^= std::uint64_t{a} << k;
  for (int k = 63; k >= static_cast<int>(m); --k)
    if ((p >> k) & 1u) p ^= std::uint64_t{modulus} << (k - m);
  return static_cast<std::uint32_t>(p);
}

}  // namespace

TEST_CASE("bit vectors") {
  BitVector v(70);
  v.set(0);
  v.set(69);
  CHECK(v.popcount() == 2);
  CHECK(v.first_set() == 0u);
  v.flip(0);
  CHECK(v.first_set() == 69u);
  CHECK(BitVector(5).is_zero());
  CHECK((BitVector::from_word(4, 0b1010) + BitVector::from_word(4, 0b0110)).to_word() == 0b1100);
  CHECK(BitVector::from_word(3, 0xFF).to_word() == 0b111);
  CHECK(BitVector::from_word(4, 0b1011).dot(BitVector::from_word(4, 0b0011)) == false);
  CHECK(BitVector::from_word(4, 0b1011).dot(BitVector::from_word(4, 0b0010)) == true);
  CHECK_THROWS_AS(v.get(70), Error);
  const std::uint64_t words[] = {~0ull, ~0ull};
  CHECK(BitVector::from_words(65, words).popcount() == 65);
}

TEST_CASE("rank") {
  CHECK(rank(BitMatrix::identity(3)) == 3);
  CHECK(rank(BitMatrix::from_rows({{1, 1}, {1, 1}})) == 1);
  CHECK(rank(BitMatrix(2, 2)) == 0);
}

TEST_CASE("inverse") {
  CHECK(invert(BitMatrix::identity(4)) == BitMatrix::identity(4));
  const BitMatrix swap = BitMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(invert(swap) == swap);
  CHECK(swap * invert(swap) == BitMatrix::identity(2));
  try {
    invert(BitMatrix::from_rows({{1, 1}, {1, 1}}));
    FAIL("expected SingularError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingular);
  }
  CHECK_THROWS_AS(invert(BitMatrix(2, 3)), Error);
}

TEST_CASE("property: random matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const BitMatrix a = random_matrix(rng, n, n);
    const std::size_t r = rank(a);
    CHECK(r + kernel_basis(a).size() == n);
    for (const auto& v : kernel_basis(a)) CHECK(a.apply(v).is_zero());
    CHECK(rank(a.transpose()) == r);
    if (r == n) {
      const BitMatrix inv = invert(a);
      CHECK(a * inv == BitMatrix::identity(n));
      CHECK(inv * a == BitMatrix::identity(n));
    } else {
      CHECK_THROWS_AS(invert(a), Error);
    }
    // apply_word agrees with apply, and matrix product with composition
    const BitMatrix b = random_matrix(rng, n, n);
    const std::uint64_t w = rng() & ((std::uint64_t{1} << n) - 1);
    CHECK(a.apply_word(w) == a.apply(BitVector::from_word(n, w)).to_word());
    CHECK((a * b).apply_word(w) == a.apply_word(b.apply_word(w)));
  }
}

TEST_CASE("span basis and word basis") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<BitVector> vs;
    WordBasis wb;
    BitMatrix m(0, n);
    std::vector<BitVector> rows;
    for (int k = 0; k < 6; ++k) {
      vs.push_back(BitVector::from_word(n, rng()));
      wb.insert(vs.back().to_word());
    }
    const auto basis = span_basis(vs);
    CHECK(basis.size() == wb.size());
    CHECK(basis.size() == rank(BitMatrix::from_columns(n, vs)));
    for (const auto& v : vs) CHECK(wb.contains(v.to_word()));
  }
}

TEST_CASE("GF(2^m) arithmetic") {
  const FieldF2m gf4(2);
  const FieldElement w = 0b10;
  CHECK(gf4.mul(w, w) == 0b11);  // omega^2 = omega + 1
  const FieldF2m gf8(3, 0b1011);
  CHECK(gf8.mul(0b010, 0b100) == 0b011);  // x * x^2 = x + 1
  for (unsigned m = 1; m <= 12; ++m) {
    const FieldF2m f(m);
    CHECK(FieldF2m::is_irreducible(f.modulus()));
    std::mt19937_64 rng(m);
    for (int t = 0; t < 200; ++t) {
      const FieldElement a = rng() % f.size(), b = rng() % f.size(), c = rng() % f.size();
      CHECK(f.mul(1, a) == a);
      CHECK(f.mul(a, b) == slow_field_mul(a, b, f.modulus(), m));
      CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
      CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
      if (a) CHECK(f.mul(a, f.inverse(a)) == 1);
      CHECK(f.pow(a, f.size()) == a);  // Frobenius fixes the whole field
    }
  }
  CHECK_THROWS_AS(FieldF2m(2, 0b101), Error);  // x^2 + 1 = (x+1)^2
  CHECK_THROWS_AS(gf4.inverse(0), Error);
}

TEST_CASE("subfields") {
  CHECK(subfield_elements(FieldF2m(2), 1) == std::vector<FieldElement>{0, 1});
  const FieldF2m gf16(4);
  const auto sub = subfield_elements(gf16, 2);
  CHECK(sub.size() == 4);
  for (auto a : sub)
    for (auto b : sub) {
      CHECK(std::find(sub.begin(), sub.end(), a ^ b) != sub.end());
      CHECK(std::find(sub.begin(), sub.end(), gf16.mul(a, b)) != sub.end());
    }
  CHECK(subfield_elements(gf16, 4).size() == 16);
  try {
    subfield_elements(gf16, 3);
    FAIL("expected NonDivisor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonDivisor);
  }
}

TEST_CASE("multiplication endomorphisms") {
  const FieldF2m gf4(2);
  CHECK(mul_endomorphism(gf4, 1) == BitMatrix::identity(2));
  CHECK(mul_endomorphism(gf4, 0).is_zero());
  const BitMatrix mw = mul_endomorphism(gf4, 0b10);
  CHECK(mw.column(0).to_word() == 0b10);  // 1 -> omega
  CHECK(mw.column(1).to_word() == 0b11);  // omega -> omega + 1
  const FieldF2m gf32(5);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const FieldElement c = rng() % 32, a = rng() % 32;
    CHECK(mul_endomorphism(gf32, c).apply_word(a) == gf32.mul(c, a));
  }
}
