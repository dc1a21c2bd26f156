#pragma once

// Bit-packed linear algebra over F2 and arithmetic in GF(2^m).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aloop {

/// A vector in F2^dim. Coordinate k is bit k of the packed words; bits past
/// `dim` are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t dim);

  static BitVector from_word(std::size_t dim, std::uint64_t bits);
  static BitVector unit(std::size_t dim, std::size_t k);
  // Bits past dim are masked off.
  static BitVector from_words(std::size_t dim, std::span<const std::uint64_t> words);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool get(std::size_t k) const;
  void set(std::size_t k, bool value = true);
  void flip(std::size_t k);

  bool is_zero() const noexcept;
  std::size_t popcount() const noexcept;
  std::optional<std::size_t> first_set() const noexcept;
  // Requires dim <= 64.
  std::uint64_t to_word() const;

  // Inner product over F2.
  bool dot(const BitVector& other) const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator+=(const BitVector& other) { return *this ^= other; }
  friend BitVector operator+(BitVector a, const BitVector& b) { return a ^= b; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  // Orders by dim, then as an unsigned integer (high words first).
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row-major matrix over F2; row r is a BitVector of length cols().
/// Acts on column vectors: (M v)_r = <row_r, v>.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BitMatrix from_columns(std::size_t rows, std::span<const BitVector> cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_.at(r).get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { data_.at(r).set(c, value); }
  const BitVector& row(std::size_t r) const { return data_.at(r); }
  BitVector column(std::size_t c) const;

  BitVector apply(const BitVector& v) const;
  // Fast path for cols <= 64: input/output as packed words.
  std::uint64_t apply_word(std::uint64_t v) const;

  BitMatrix transpose() const;
  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  std::vector<std::vector<int>> to_rows() const;

  BitMatrix& operator+=(const BitMatrix& other);
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

std::size_t rank(const BitMatrix& m);

/// Gauss-Jordan inverse. Throws Error(kSingular) when rank < dim and
/// Error(kInvalidArgument) for a non-square input.
BitMatrix invert(const BitMatrix& m);

/// Basis of {v : M v = 0}, one vector per free column.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/// Reduced echelon basis of the span of `vectors` (all of equal dim).
std::vector<BitVector> span_basis(std::span<const BitVector> vectors);

/// Incremental echelon basis over packed 64-bit words.
class WordBasis {
 public:
  // Returns true iff v was independent of the current span.
  bool insert(std::uint64_t v);
  std::uint64_t reduce(std::uint64_t v) const;
  bool contains(std::uint64_t v) const { return reduce(v) == 0; }
  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<std::uint64_t>& vectors() const noexcept { return basis_; }

 private:
  // Sorted by leading bit, descending; each vector's leading bit is clear in all others.
  std::vector<std::uint64_t> basis_;
};

using FieldElement = std::uint32_t;

/// GF(2^m) in the polynomial basis {1, x, ..., x^(m-1)}: elements are
/// integers < 2^m whose bit k is the coefficient of x^k.
class FieldF2m {
 public:
  static constexpr unsigned kMaxDegree = 16;

  /// Standard modulus from the built-in table (m = 1..12).
  explicit FieldF2m(unsigned m);
  /// Explicit modulus, bit m set; irreducibility is checked (m <= 16).
  FieldF2m(unsigned m, std::uint32_t modulus);

  unsigned degree() const noexcept { return m_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t size() const noexcept { return 1u << m_; }

  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  // Throws Error(kSingular) for a == 0.
  FieldElement inverse(FieldElement a) const;

  static std::uint32_t standard_modulus(unsigned m);
  static bool is_irreducible(std::uint32_t poly);

 private:
  unsigned m_;
  std::uint32_t modulus_;
};

/// Elements of the subfield GF(2^d), i.e. the kernel of a -> a^(2^d) + a,
/// in increasing integer order. Throws Error(kNonDivisor) unless d | m.
std::vector<FieldElement> subfield_elements(const FieldF2m& field, unsigned d);

/// Matrix of a -> c*a in the polynomial basis; column k is c*x^k.
BitMatrix mul_endomorphism(const FieldF2m& field, FieldElement c);

}  // namespace aloop
