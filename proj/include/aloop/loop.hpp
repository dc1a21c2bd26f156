#pragma once

// Finite loops as Cayley tables, and their loop-theoretic analysis.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace aloop {

using Element = std::uint16_t;

/// Permutation of {0..n-1}; p(x) = image[x].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Element> image);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return image_.size(); }
  Element operator()(Element x) const { return image_[x]; }
  const std::vector<Element>& image() const noexcept { return image_; }
  bool is_identity() const noexcept;

  Permutation inverse() const;
  // (p * q)(x) = p(q(x)).
  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Element> image_;
};

/// A loop on {0..n-1} with identity 0; table[r * n + c] = r * c.
/// Immutable; the division tables are built at validation.
class FiniteLoop {
 public:
  static constexpr std::size_t kMaxOrder = std::size_t{1} << 14;

  /// Checks the Latin-square and identity-at-0 axioms; throws LoopAxiomError
  /// naming the first offending row or column.
  static FiniteLoop from_table(std::size_t order, std::vector<Element> table);
  static FiniteLoop from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t order() const noexcept { return n_; }
  Element mul(Element a, Element b) const noexcept { return table_[std::size_t{a} * n_ + b]; }
  // a \ b: the x with a * x = b.
  Element left_div(Element a, Element b) const noexcept { return ldiv_[std::size_t{a} * n_ + b]; }
  // b / a: the x with x * a = b.
  Element right_div(Element b, Element a) const noexcept { return rdiv_[std::size_t{b} * n_ + a]; }

  std::span<const Element> row(Element a) const { return {table_.data() + std::size_t{a} * n_, n_}; }
  const std::vector<Element>& table() const noexcept { return table_; }
  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const FiniteLoop& a, const FiniteLoop& b) { return a.table_ == b.table_; }

 private:
  FiniteLoop() = default;

  std::size_t n_ = 0;
  std::vector<Element> table_;
  std::vector<Element> ldiv_;
  std::vector<Element> rdiv_;
};

enum class Side { kLeft, kRight };
/// left: a \ b; right: b / a.
Element divide(const FiniteLoop& q, Side side, Element a, Element b);

struct LoopPredicates {
  bool commutative = false;
  bool exponent2 = false;
  bool associative = false;
};
LoopPredicates predicates(const FiniteLoop& q);
bool is_commutative(const FiniteLoop& q);
bool is_associative(const FiniteLoop& q);
/// Associativity of the restriction to a subloop.
bool is_associative_on(const FiniteLoop& q, std::span<const Element> subset);

/// Visits the standard generators of Inn(Q):
///   L_{x,y} = L_{xy}^-1 L_x L_y,  R_{x,y} = R_{xy}^-1 R_y R_x,  T_x = L_x^-1 R_x,
/// or only the L_{x,y} when `commutative_reduced` (caller must have verified
/// commutativity). Stops early when the visitor returns false.
void for_each_inner_generator(const FiniteLoop& q, bool commutative_reduced,
                              const std::function<bool(const Permutation&)>& visit);

/// 2n^2+n generators in general, n^2 once commutativity is verified.
std::vector<Permutation> inner_generators(const FiniteLoop& q);

enum class AutomorphicMethod {
  kDirect,              // every inner generator is a homomorphism
  kSectionConjugation,  // s^-1 R s = R for every generator s, R the right section
};
bool is_automorphic(const FiniteLoop& q, AutomorphicMethod method = AutomorphicMethod::kDirect);

struct Nuclei {
  std::vector<Element> left;       // a(xy) = (ax)y
  std::vector<Element> middle;     // x(ay) = (xa)y
  std::vector<Element> right;      // x(ya) = (xy)a
  std::vector<Element> commutant;  // ax = xa
  std::vector<Element> center;
};
Nuclei nuclei_and_center(const FiniteLoop& q);
std::vector<Element> middle_nucleus(const FiniteLoop& q);

/// Smallest subloop containing `generators` (closed under * and both divisions).
std::vector<Element> closure(const FiniteLoop& q, std::span<const Element> generators);
bool is_subloop(const FiniteLoop& q, std::span<const Element> subset);

struct SubloopOptions {
  std::size_t max_generators = 0;  // 0 selects ceil(log2 n) + 1
  std::size_t closure_budget = 1'000'000;
};

/// All closures <S> with |S| <= max_generators, deduplicated, sorted by size
/// then lexicographically. Throws Error(kSizeLimit) when more closures than
/// the budget would be computed.
std::vector<std::vector<Element>> subloops(const FiniteLoop& q, SubloopOptions options = {});

/// s(K) = K for every inner generator s. Throws Error(kNotASubloop).
bool is_normal(const FiniteLoop& q, std::span<const Element> subloop);

struct SplitWitness {
  std::vector<Element> k_part;
  std::vector<Element> h_part;
  // phi[i][j][a]: image of k_part[a] under phi_{i,j}, as an index into k_part,
  // with i, j indexing h_part.
  std::vector<std::vector<std::vector<std::size_t>>> phi;
};

struct SplitResult {
  std::optional<SplitWitness> witness;
  // Transcript of the exhaustive search.
  std::size_t k_candidates = 0;
  std::size_t h_candidates = 0;
};

/// Searches for subgroups H, K with K normal, K <= N_mu(Q), Q = HK (as sets)
/// and H intersect K = {0}. K is tried in decreasing size.
SplitResult nuclear_split(const FiniteLoop& q, std::size_t closure_budget = 10'000'000);

struct LoopReport {
  std::size_t order = 0;
  LoopPredicates flags;
  bool automorphic = false;
  Nuclei nuclei;
  std::optional<SplitResult> split;  // absent when not requested
};

LoopReport analyze(const FiniteLoop& q, bool with_split = true);

}  // namespace aloop
