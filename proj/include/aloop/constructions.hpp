#pragma once

// Loop constructions: the Lie-ring loop, nuclear semidirect products, the
// beta-construction on K + H, the field examples and the X^2 = 0 family.
//
// Elements of K + H are packed as a | (i << k_dim): K coordinates low, H high.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aloop/error.hpp"
#include "aloop/gf2.hpp"
#include "aloop/lie.hpp"
#include "aloop/loop.hpp"

namespace aloop {

class PhiConditionError : public Error {
 public:
  PhiConditionError(std::string condition, const std::string& what)
      : Error(ErrorCode::kPhiCondition, what), condition_(std::move(condition)) {}
  // One of: shape, invertible, symmetry, identity, commuting, cocycle, sum.
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// x o y = x + y + [x, y] on F2^dim. Requires a validated algebra with (W1);
/// throws W1Violation otherwise.
FiniteLoop lie_to_loop(const LieAlgebraF2& algebra);

/// The y with x o y = z, computed as (id + ad_x)^-1 (z + x).
std::uint64_t lie_left_divide(const LieAlgebraF2& algebra, std::uint64_t x, std::uint64_t z);

/// {a : [[x, y], a] = 0 for all basis x, y}, as bit-encoded elements.
std::vector<Element> bracket_annihilator_of_derived(const LieAlgebraF2& algebra);

/// A linear map beta: H -> End(K), one k_dim x k_dim matrix per H-basis vector.
struct BetaMap {
  std::size_t k_dim = 0;
  std::size_t h_dim = 0;
  std::vector<BitMatrix> matrices;

  /// beta(i) for i in F2^h_dim, extended linearly.
  BitMatrix at(std::uint64_t i) const;
  std::size_t order() const { return std::size_t{1} << (k_dim + h_dim); }
};

/// Shape checks, then condition (i) on basis pairs (NonCommutingBeta) and
/// condition (ii) on every element of H (SingularIdPlusBeta).
void validate_beta(const BetaMap& beta);

/// [a + i, b + j] = (beta(j) a + beta(i) b) + 0 as structure constants on
/// K + H. Not validated: Jacobi holds iff the beta(e_l) commute.
LieAlgebraF2 beta_lie_algebra(const BetaMap& beta);

/// (a + i) * (b + j) = (a + b + beta(j) a + beta(i) b) + (i + j).
/// The result is checked to be commutative, of exponent 2 and automorphic.
FiniteLoop beta_loop(const BetaMap& beta);

/// Automorphisms phi_{i,j} of K indexed by H x H.
struct PhiFamily {
  std::size_t k_dim = 0;
  std::size_t h_dim = 0;
  std::vector<BitMatrix> members;  // index i * 2^h_dim + j

  std::size_t h_size() const { return std::size_t{1} << h_dim; }
  const BitMatrix& at(std::uint64_t i, std::uint64_t j) const { return members.at(i * h_size() + j); }
};

/// Exponent-2 form of the five conditions (invertibility is checked too):
/// symmetry, phi_{0,i} = id, pairwise commuting, the cocycle identity
/// phi_{i,j+k} phi_{j,k} = phi_{k,i+j} phi_{i,j}, and
/// phi_{i,j+k} + phi_{j,i+k} + phi_{k,i+j} = id. Throws PhiConditionError.
void validate_phi_family(const PhiFamily& phi);

/// phi_{i,j} = (id + beta(i+j))^-1 (id + beta(i)) (id + beta(j)).
PhiFamily phi_from_beta(const BetaMap& beta);

/// (a, i) * (b, j) = (phi_{i,j}(a + b), i + j). Validates the family and
/// checks that K is a normal subloop inside the middle nucleus.
FiniteLoop nuclear_semidirect(const PhiFamily& phi);

struct PredictedCenter {
  std::vector<BitVector> k_basis;  // {a : beta(j) beta(l) a = 0 for all j, l}
  std::vector<std::uint64_t> h_part;  // {i : beta(i) beta(j) = 0 for all j}
  // Common kernel of the beta(j). Contained in k_basis's span, and equal to
  // it when some beta(j) is invertible, but smaller for nilpotent beta.
  std::vector<BitVector> k_kernel_basis;
  std::size_t k_dim = 0;

  /// The direct sum of both parts, as sorted loop elements.
  std::vector<Element> elements() const;
};
PredictedCenter predicted_center(const BetaMap& beta);

/// Builds Phi from beta, validates it, builds both loops, and checks that
/// u(a + i) = (id + beta(i)) a + i is a bijection with u(x * y) = u(x) * u(y)
/// from the semidirect product onto the beta-loop. Throws Error(kMismatch).
void u_isomorphism_check(const BetaMap& beta);

/// beta(i) = multiplication by delta(i), delta given as an m x h_dim matrix
/// whose columns are field elements. Throws NotInjective / UnitInImage.
BetaMap example1_beta(const FieldF2m& field, const BitMatrix& delta);
FiniteLoop example1_loop(const FieldF2m& field, const BitMatrix& delta);

struct Example2Data {
  FieldF2m field;
  std::vector<FieldElement> subfield;  // all of GF(2^d), ascending
  std::vector<FieldElement> h_basis;   // greedy basis of the subfield
  FieldElement sigma = 0;              // least element of K outside H
  BetaMap beta;
};
/// K = GF(2^m), H = GF(2^d), beta(i)(a) = sigma i a. Throws BadSubfield
/// unless d | m and d < m.
Example2Data example2_data(unsigned m, unsigned d);
FiniteLoop example2_loop(unsigned m, unsigned d);

struct HoraJedWitness {
  PhiFamily phi;
  FiniteLoop loop;
  std::uint64_t fixed_vector = 0;  // nonzero a in the common kernel of X
  Element central = 0;             // (a, 0)
};

/// phi_{i,j} = id + m(i,j) with m bilinear and symmetric, valued in span(X),
/// where X^2 = 0. `m_basis` is the h_dim x h_dim table m(e_l, e_r).
/// Throws DegenerateX, XSquareNonzero, or InvalidArgument for values outside span(X).
HoraJedWitness hora_jed_witness(const std::vector<BitMatrix>& x_set,
                                const std::vector<std::vector<BitMatrix>>& m_basis);

struct HoraJedInput {
  std::vector<BitMatrix> x_set;
  std::vector<std::vector<BitMatrix>> m_basis;
};

/// Seeded input for hora_jed_witness: X is spanned by conjugates P [0 A; 0 0] P^-1
/// of a fixed block shape, and m takes random values in span(X). k_dim >= 2.
HoraJedInput random_hora_jed_input(std::size_t k_dim, std::size_t h_dim, std::uint64_t seed);

/// Commutative, exponent 2 and automorphic, each decided by the loop checkers.
bool is_commutative_automorphic_exp2(const FiniteLoop& q);

}  // namespace aloop
