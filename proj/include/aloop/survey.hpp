#pragma once

// Exhaustive and sampled searches over nilpotent Lie algebras over F2:
// the W2 / W2+ / W2- classification and the nonsplit-loop scan.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aloop/gf2.hpp"
#include "aloop/lie.hpp"
#include "aloop/loop.hpp"

namespace aloop {

enum class Verdict { kConsistent, kCounterexampleA, kCounterexampleB };
const char* verdict_name(Verdict v);

struct ClassifyVerdict {
  std::optional<bool> w2;
  std::optional<bool> w2plus;
  std::optional<bool> w2minus;  // only evaluated when W2 fails
  Verdict verdict = Verdict::kConsistent;
};

constexpr std::size_t kDefaultBudgetOrder = std::size_t{1} << 13;

/// Tests W2 first; if it holds, W2+ (both methods, which must agree);
/// otherwise W2- through the loop x + y + [x,y]. Throws
/// Error(kBudgetExceeded) when that loop would exceed `budget_order`.
ClassifyVerdict classify_lie(const LieAlgebraF2& algebra, std::size_t budget_order = kDefaultBudgetOrder);

/// Structure constants with [e_i, e_j] in span(e_{j+1}, ..., e_{n-1}) for
/// i < j, packed into a bit pattern: pairs in lexicographic (i, j) order,
/// each contributing n-1-j bits (low bit = coefficient of e_{j+1}).
class FlagLayout {
 public:
  static constexpr std::size_t kMaxDim = 9;

  explicit FlagLayout(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t bits() const noexcept { return bits_; }

  LieAlgebraF2 decode(const BitVector& pattern) const;
  LieAlgebraF2 decode(std::uint64_t pattern) const;
  /// Throws Error(kInvalidArgument) if the algebra is not flag-adapted.
  BitVector encode(const LieAlgebraF2& algebra) const;

 private:
  struct Slot {
    std::size_t i, j, offset, width;
  };
  std::size_t dim_;
  std::size_t bits_ = 0;
  std::vector<Slot> slots_;
};

/// Every flag-adapted table passing Jacobi, in pattern order. n <= 6.
std::vector<LieAlgebraF2> enumerate_flag_nilpotent(std::size_t n);

/// `count` seeded uniform draws over flag-adapted patterns; the Jacobi-passing
/// ones are returned in draw order. n <= 9.
std::vector<LieAlgebraF2> sample_flag_nilpotent(std::size_t n, std::uint64_t count, std::uint64_t seed);

struct ScanMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static ScanMode Exhaustive() { return {}; }
  static ScanMode Sampled(std::uint64_t samples, std::uint64_t seed) { return {false, samples, seed}; }
};

struct ScanOptions {
  std::size_t jobs = 1;
  std::size_t budget_order = kDefaultBudgetOrder;
};

struct ScanCounterexample {
  LieAlgebraF2 algebra;
  Verdict verdict = Verdict::kConsistent;
};

struct ScanReport {
  std::size_t dim = 0;
  ScanMode mode;
  std::uint64_t candidates = 0;
  std::uint64_t jacobi_passed = 0;
  std::uint64_t consistent = 0;
  std::uint64_t w2_true = 0;
  std::uint64_t w2_false = 0;
  std::uint64_t skipped_budget = 0;
  std::vector<ScanCounterexample> counterexamples;  // sorted by flag pattern
  std::vector<std::string> unexercised_branches;    // "w2_true" / "w2_false"

  friend bool operator==(const ScanReport& a, const ScanReport& b);
};

/// Problem-1 scan: classify every candidate. Exhaustive mode needs n <= 6.
ScanReport scan_problem1(std::size_t n, ScanMode mode, ScanOptions options = {});

struct NonsplitWitness {
  LieAlgebraF2 algebra;
  FiniteLoop loop;
  std::size_t nucleus_index = 0;
  SplitResult search;
};

struct NonsplitReport {
  std::size_t dim = 0;
  ScanMode mode;
  std::uint64_t candidates = 0;
  std::uint64_t jacobi_passed = 0;
  std::uint64_t automorphic = 0;      // commutative automorphic exponent-2 loops seen
  std::uint64_t nucleus_index4 = 0;   // ... of those, with |Q : N_mu| = 4
  std::vector<NonsplitWitness> witnesses;
};

/// Loops x + y + [x,y] that are commutative automorphic of exponent 2, have
/// middle nucleus of index 4, and do not split nuclearly. Exhaustive mode
/// needs n <= 5; sampled mode n <= 7.
NonsplitReport scan_nonsplit(std::size_t n, ScanMode mode, ScanOptions options = {});

/// Brute force over GL(n, 2) after a series-dimension filter. n <= 4.
bool lie_isomorphic(const LieAlgebraF2& a, const LieAlgebraF2& b);

}  // namespace aloop
