#include "aloop/gf2.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "aloop/error.hpp"

namespace aloop {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t dim) { return (dim + kWordBits - 1) / kWordBits; }

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
  std::uint64_t acc = 0;
  std::uint64_t shifted = a;
  for (; b != 0; b >>= 1, shifted <<= 1)
    if (b & 1u) acc ^= shifted;
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t dim) : dim_(dim), words_(word_count(dim), 0) {}

BitVector BitVector::from_word(std::size_t dim, std::uint64_t bits) {
  BitVector v(dim);
  if (dim < kWordBits) bits &= (std::uint64_t{1} << dim) - 1;
  if (!v.words_.empty()) v.words_[0] = bits;
  return v;
}

BitVector BitVector::from_words(std::size_t dim, std::span<const std::uint64_t> words) {
  BitVector v(dim);
  for (std::size_t i = 0; i < v.words_.size() && i < words.size(); ++i) v.words_[i] = words[i];
  if (dim % kWordBits != 0 && !v.words_.empty()) v.words_.back() &= (std::uint64_t{1} << (dim % kWordBits)) - 1;
  return v;
}

BitVector BitVector::unit(std::size_t dim, std::size_t k) {
  BitVector v(dim);
  v.set(k);
  return v;
}

bool BitVector::get(std::size_t k) const {
  if (k >= dim_) throw Error(ErrorCode::kInvalidArgument, "BitVector index out of range");
  return (words_[k / kWordBits] >> (k % kWordBits)) & 1u;
}

void BitVector::set(std::size_t k, bool value) {
  if (k >= dim_) throw Error(ErrorCode::kInvalidArgument, "BitVector index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (k % kWordBits);
  if (value)
    words_[k / kWordBits] |= mask;
  else
    words_[k / kWordBits] &= ~mask;
}

void BitVector::flip(std::size_t k) { set(k, !get(k)); }

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::optional<std::size_t> BitVector::first_set() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
  return std::nullopt;
}

std::uint64_t BitVector::to_word() const {
  if (dim_ > kWordBits) throw Error(ErrorCode::kInvalidArgument, "BitVector wider than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

bool BitVector::dot(const BitVector& other) const {
  if (other.dim_ != dim_) throw Error(ErrorCode::kInvalidArgument, "BitVector dim mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::kInvalidArgument, "BitVector dim mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;)
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].set(i);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::kInvalidArgument, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0 && rows[r][c] != 1)
        throw Error(ErrorCode::kInvalidArgument, "matrix entries must be 0 or 1");
      m.data_[r].set(c, rows[r][c] == 1);
    }
  }
  return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, std::span<const BitVector> cols) {
  BitMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].dim() != rows) throw Error(ErrorCode::kInvalidArgument, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r)
      if (cols[c].get(r)) m.data_[r].set(c);
  }
  return m;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r].get(c)) v.set(r);
  return v;
}

BitVector BitMatrix::apply(const BitVector& v) const {
  if (v.dim() != cols_) throw Error(ErrorCode::kInvalidArgument, "matrix/vector dim mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r].dot(v)) out.set(r);
  return out;
}

std::uint64_t BitMatrix::apply_word(std::uint64_t v) const {
  std::uint64_t out = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto w = data_[r].words();
    if (!w.empty() && (std::popcount(w[0] & v) & 1)) out |= std::uint64_t{1} << r;
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (data_[r].get(c)) t.data_[c].set(r);
  return t;
}

bool BitMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const BitVector& r) { return r.is_zero(); });
}

bool BitMatrix::is_identity() const noexcept {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r] != BitVector::unit(cols_, r)) return false;
  return true;
}

std::vector<std::vector<int>> BitMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = data_[r].get(c) ? 1 : 0;
  return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_)
    throw Error(ErrorCode::kInvalidArgument, "matrix shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) data_[r] ^= other.data_[r];
  return *this;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::kInvalidArgument, "matrix shape mismatch");
  BitMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (a.data_[r].get(k)) out.data_[r] ^= b.data_[k];
  return out;
}

// ------------------------------------------------------------- elimination

namespace {

// Forward elimination to reduced row echelon form; returns pivot columns.
// Rows are xored word-at-a-time; the pivot is the first row with the bit set.
std::vector<std::size_t> reduce_rows(std::vector<BitVector>& rows, std::size_t cols,
                                     std::vector<BitVector>* companion = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    if (companion) std::swap((*companion)[p], (*companion)[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) {
        rows[r] ^= rows[next];
        if (companion) (*companion)[r] ^= (*companion)[next];
      }
    }
    pivots.push_back(c);
    ++next;
  }
  return pivots;
}

std::vector<BitVector> rows_of(const BitMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

}  // namespace

std::size_t rank(const BitMatrix& m) {
  auto rows = rows_of(m);
  return reduce_rows(rows, m.cols()).size();
}

BitMatrix invert(const BitMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kInvalidArgument, "invert: matrix is not square");
  const std::size_t n = m.rows();
  auto rows = rows_of(m);
  std::vector<BitVector> inv;
  inv.reserve(n);
  for (std::size_t i = 0; i < n; ++i) inv.push_back(BitVector::unit(n, i));
  const auto pivots = reduce_rows(rows, n, &inv);
  if (pivots.size() < n)
    throw Error(ErrorCode::kSingular,
                "matrix is singular (rank " + std::to_string(pivots.size()) + " < " + std::to_string(n) + ")");
  BitMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (inv[r].get(c)) out.set(r, c);
  return out;
}

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  auto rows = rows_of(m);
  const auto pivots = reduce_rows(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v = BitVector::unit(m.cols(), f);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (rows[r].get(f)) v.set(pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BitVector> span_basis(std::span<const BitVector> vectors) {
  if (vectors.empty()) return {};
  std::vector<BitVector> rows(vectors.begin(), vectors.end());
  const auto pivots = reduce_rows(rows, rows.front().dim());
  rows.resize(pivots.size());
  return rows;
}

bool WordBasis::insert(std::uint64_t v) {
  v = reduce(v);
  if (v == 0) return false;
  const std::uint64_t lead = std::uint64_t{1} << poly_degree(v);
  for (auto& b : basis_)
    if (b & lead) b ^= v;
  auto pos = std::find_if(basis_.begin(), basis_.end(), [&](std::uint64_t b) { return b < v; });
  basis_.insert(pos, v);
  return true;
}

std::uint64_t WordBasis::reduce(std::uint64_t v) const {
  for (auto b : basis_) {
    const std::uint64_t lead = std::uint64_t{1} << poly_degree(b);
    if (v & lead) v ^= b;
  }
  return v;
}

// ------------------------------------------------------------------ FieldF2m

std::uint32_t FieldF2m::standard_modulus(unsigned m) {
  static constexpr std::uint32_t kTable[] = {
      0,       // unused
      0x3,     // x + 1
      0x7,     // x^2 + x + 1
      0xB,     // x^3 + x + 1
      0x13,    // x^4 + x + 1
      0x25,    // x^5 + x^2 + 1
      0x43,    // x^6 + x + 1
      0x83,    // x^7 + x + 1
      0x11B,   // x^8 + x^4 + x^3 + x + 1
      0x211,   // x^9 + x^4 + 1
      0x409,   // x^10 + x^3 + 1
      0x805,   // x^11 + x^2 + 1
      0x1053,  // x^12 + x^6 + x^4 + x + 1
  };
  if (m == 0 || m >= std::size(kTable))
    throw Error(ErrorCode::kUnsupportedParams, "no standard modulus for degree " + std::to_string(m));
  return kTable[m];
}

bool FieldF2m::is_irreducible(std::uint32_t poly) {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (std::uint64_t divisor = 2; poly_degree(divisor) <= deg / 2; ++divisor)
    if (poly_mod(poly, divisor) == 0) return false;
  return true;
}

FieldF2m::FieldF2m(unsigned m) : FieldF2m(m, standard_modulus(m)) {}

FieldF2m::FieldF2m(unsigned m, std::uint32_t modulus) : m_(m), modulus_(modulus) {
  if (m == 0 || m > kMaxDegree)
    throw Error(ErrorCode::kUnsupportedParams, "field degree must be in 1..16");
  if (poly_degree(modulus) != static_cast<int>(m))
    throw Error(ErrorCode::kInvalidArgument, "modulus degree does not match m");
  if (!is_irreducible(modulus))
    throw Error(ErrorCode::kInvalidArgument, "modulus " + std::to_string(modulus) + " is reducible");
}

FieldElement FieldF2m::mul(FieldElement a, FieldElement b) const {
  return static_cast<FieldElement>(poly_mod(clmul(a, b), modulus_));
}

FieldElement FieldF2m::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = 1;
  for (; e != 0; e >>= 1, a = mul(a, a))
    if (e & 1u) result = mul(result, a);
  return result;
}

FieldElement FieldF2m::inverse(FieldElement a) const {
  if (a == 0) throw Error(ErrorCode::kSingular, "zero has no inverse");
  return pow(a, (std::uint64_t{1} << m_) - 2);
}

std::vector<FieldElement> subfield_elements(const FieldF2m& field, unsigned d) {
  const unsigned m = field.degree();
  if (d == 0 || m % d != 0)
    throw Error(ErrorCode::kNonDivisor,
                std::to_string(d) + " does not divide the field degree " + std::to_string(m));
  // Column k holds (x^k)^(2^d) + x^k.
  std::vector<BitVector> cols;
  for (unsigned k = 0; k < m; ++k) {
    const FieldElement basis = FieldElement{1} << k;
    FieldElement image = basis;
    for (unsigned s = 0; s < d; ++s) image = field.mul(image, image);
    cols.push_back(BitVector::from_word(m, image ^ basis));
  }
  const auto kernel = kernel_basis(BitMatrix::from_columns(m, cols));
  std::vector<FieldElement> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << kernel.size()); ++mask) {
    FieldElement e = 0;
    for (std::size_t b = 0; b < kernel.size(); ++b)
      if ((mask >> b) & 1u) e ^= static_cast<FieldElement>(kernel[b].to_word());
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BitMatrix mul_endomorphism(const FieldF2m& field, FieldElement c) {
  const unsigned m = field.degree();
  std::vector<BitVector> cols;
  for (unsigned k = 0; k < m; ++k) cols.push_back(BitVector::from_word(m, field.mul(c, FieldElement{1} << k)));
  return BitMatrix::from_columns(m, cols);
}

}  // namespace aloop
