#pragma once

// Lie algebras over F2 given by structure constants.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "aloop/gf2.hpp"

namespace aloop {

/// Lie algebra over F2 on the basis e_0..e_{dim-1}. Only [e_i, e_j] for i < j
/// is stored; [e_i, e_i] = 0 and [e_j, e_i] = [e_i, e_j] (characteristic 2).
/// Elements are packed words (bit k = coefficient of e_k), so dim <= 64.
class LieAlgebraF2 {
 public:
  static constexpr std::size_t kMaxDim = 64;

  explicit LieAlgebraF2(std::size_t dim = 0);

  std::size_t dim() const noexcept { return dim_; }

  std::uint64_t basis_bracket(std::size_t i, std::size_t j) const;
  void set_basis_bracket(std::size_t i, std::size_t j, std::uint64_t value);

  std::uint64_t bracket(std::uint64_t x, std::uint64_t y) const;
  BitVector bracket(const BitVector& x, const BitVector& y) const;

  friend bool operator==(const LieAlgebraF2&, const LieAlgebraF2&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t dim_;
  std::vector<std::uint64_t> upper_;  // [e_i, e_j], i < j, row-major upper triangle
};

/// Throws JacobiError naming the first basis triple i < j < k on which the
/// Jacobi sum is nonzero.
void validate(const LieAlgebraF2& algebra);
/// Non-throwing form of validate.
bool satisfies_jacobi(const LieAlgebraF2& algebra);

/// Column k is [x, e_k].
BitMatrix ad_matrix(const LieAlgebraF2& algebra, const BitVector& x);

struct SeriesReport {
  std::vector<std::size_t> lower_central_dims;  // gamma_1 = Q, gamma_{k+1} = [Q, gamma_k]
  std::vector<std::size_t> derived_dims;        // Q, Q', Q'', ...
  bool nilpotent = false;
};

SeriesReport series(const LieAlgebraF2& algebra);

/// Some x with id + ad_x singular, or nullopt when every such map is invertible.
/// Nilpotent algebras short-circuit; otherwise all 2^dim elements are tried
/// (dim <= 24, else UnsupportedParams).
std::optional<std::uint64_t> find_w1_violation(const LieAlgebraF2& algebra);
bool check_w1(const LieAlgebraF2& algebra);

/// [[x,y],[z,y]] = 0 for all x, y, z. Decided on basis vectors: the diagonal
/// terms [[x,y],[z,y]] together with the polarized form
/// [[x,y],[z,w]] + [[x,w],[z,y]].
bool check_w2(const LieAlgebraF2& algebra);

enum class W2PlusMethod { kDirect, kDerivedSeries };
/// [[x,y],[z,w]] = 0 for all x, y, z, w; either by basis quadruples or Q'' = 0.
bool check_w2plus(const LieAlgebraF2& algebra, W2PlusMethod method);

/// The algebra in the basis given by the columns of `basis` (an invertible
/// dim x dim matrix): new [f_i, f_j] = P^-1 [P e_i, P e_j].
LieAlgebraF2 change_basis(const LieAlgebraF2& algebra, const BitMatrix& basis);

// Catalog.
LieAlgebraF2 make_abelian(std::size_t dim);
/// [e_0, e_1] = e_2.
LieAlgebraF2 make_heisenberg();

/// Hall basis element of a free nilpotent algebra.
struct HallElement {
  std::size_t weight = 1;
  // Generators have left == right == npos.
  std::size_t left = static_cast<std::size_t>(-1);
  std::size_t right = static_cast<std::size_t>(-1);
  std::size_t generator = 0;
};

struct FreeNilpotent {
  LieAlgebraF2 algebra;
  std::vector<HallElement> basis;  // ordered by weight, then generation order
  std::vector<std::size_t> weight_dims;
};

/// Free nilpotent Lie algebra on `generators` generators of class `nil_class`,
/// over a Hall basis. Supports generators in {2,3}, class in {2,3,4}, dim <= 32.
FreeNilpotent make_free_nilpotent(std::size_t generators, std::size_t nil_class);

/// Witt's necklace count: dimension of the weight-k part of the free Lie
/// algebra on g generators.
std::size_t witt_dimension(std::size_t generators, std::size_t weight);

}  // namespace aloop
