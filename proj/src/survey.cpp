#include "aloop/survey.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "aloop/constructions.hpp"
#include "aloop/error.hpp"

namespace aloop {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "consistent";
    case Verdict::kCounterexampleA: return "counterexample_a";
    case Verdict::kCounterexampleB: return "counterexample_b";
  }
  return "unknown";
}

ClassifyVerdict classify_lie(const LieAlgebraF2& algebra, std::size_t budget_order) {
  ClassifyVerdict v;
  v.w2 = check_w2(algebra);
  if (*v.w2) {
    const bool direct = check_w2plus(algebra, W2PlusMethod::kDirect);
    if (direct != check_w2plus(algebra, W2PlusMethod::kDerivedSeries))
      throw Error(ErrorCode::kInternal, "W2+ methods disagree");
    v.w2plus = direct;
    v.verdict = direct ? Verdict::kConsistent : Verdict::kCounterexampleB;
    return v;
  }
  if (algebra.dim() >= 63 || (std::size_t{1} << algebra.dim()) > budget_order)
    throw Error(ErrorCode::kBudgetExceeded,
                "W2- check needs a loop of order 2^" + std::to_string(algebra.dim()) + " beyond the budget");
  v.w2minus = is_automorphic(lie_to_loop(algebra), AutomorphicMethod::kDirect);
  v.verdict = *v.w2minus ? Verdict::kCounterexampleA : Verdict::kConsistent;
  return v;
}

// -------------------------------------------------------------- FlagLayout

FlagLayout::FlagLayout(std::size_t dim) : dim_(dim) {
  if (dim > kMaxDim) throw Error(ErrorCode::kDimTooLarge, "flag-adapted enumeration supports dim <= 9");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      const std::size_t width = dim - 1 - j;
      if (width == 0) continue;
      slots_.push_back(Slot{i, j, bits_, width});
      bits_ += width;
    }
}

LieAlgebraF2 FlagLayout::decode(const BitVector& pattern) const {
  if (pattern.dim() != bits_) throw Error(ErrorCode::kInvalidArgument, "pattern has the wrong length");
  LieAlgebraF2 l(dim_);
  for (const auto& s : slots_) {
    std::uint64_t value = 0;
    for (std::size_t b = 0; b < s.width; ++b)
      if (pattern.get(s.offset + b)) value |= std::uint64_t{1} << (s.j + 1 + b);
    if (value != 0) l.set_basis_bracket(s.i, s.j, value);
  }
  return l;
}

LieAlgebraF2 FlagLayout::decode(std::uint64_t pattern) const {
  LieAlgebraF2 l(dim_);
  for (const auto& s : slots_) {
    const std::uint64_t field = (pattern >> s.offset) & ((std::uint64_t{1} << s.width) - 1);
    if (field != 0) l.set_basis_bracket(s.i, s.j, field << (s.j + 1));
  }
  return l;
}

BitVector FlagLayout::encode(const LieAlgebraF2& algebra) const {
  if (algebra.dim() != dim_) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch");
  BitVector pattern(bits_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const std::uint64_t value = algebra.basis_bracket(i, j);
      if ((value & ((std::uint64_t{2} << j) - 1)) != 0)
        throw Error(ErrorCode::kInvalidArgument, "algebra is not flag-adapted");
    }
  for (const auto& s : slots_) {
    const std::uint64_t value = algebra.basis_bracket(s.i, s.j) >> (s.j + 1);
    for (std::size_t b = 0; b < s.width; ++b)
      if ((value >> b) & 1u) pattern.set(s.offset + b);
  }
  return pattern;
}

std::vector<LieAlgebraF2> enumerate_flag_nilpotent(std::size_t n) {
  if (n > 6) throw Error(ErrorCode::kDimTooLarge, "exhaustive enumeration supports dim <= 6");
  const FlagLayout layout(n);
  std::vector<LieAlgebraF2> out;
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << layout.bits()); ++p) {
    LieAlgebraF2 l = layout.decode(p);
    if (satisfies_jacobi(l)) out.push_back(std::move(l));
  }
  return out;
}

namespace {

std::vector<BitVector> draw_patterns(const FlagLayout& layout, std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BitVector> out;
  out.reserve(count);
  std::vector<std::uint64_t> words((layout.bits() + 63) / 64);
  for (std::uint64_t d = 0; d < count; ++d) {
    for (auto& w : words) w = rng();
    out.push_back(BitVector::from_words(layout.bits(), words));
  }
  return out;
}

// Candidate source shared by the scans: either every pattern below 2^bits or
// a pre-drawn list.
struct Candidates {
  FlagLayout layout;
  std::vector<BitVector> drawn;
  bool exhaustive;

  std::uint64_t size() const { return exhaustive ? (std::uint64_t{1} << layout.bits()) : drawn.size(); }
  BitVector pattern(std::uint64_t index) const {
    return exhaustive ? BitVector::from_word(layout.bits(), index) : drawn[index];
  }
  LieAlgebraF2 algebra(std::uint64_t index) const {
    return exhaustive ? layout.decode(index) : layout.decode(drawn[index]);
  }
};

Candidates make_candidates(std::size_t n, const ScanMode& mode, std::size_t exhaustive_limit) {
  if (mode.exhaustive && n > exhaustive_limit)
    throw Error(ErrorCode::kDimTooLarge, "exhaustive mode supports dim <= " + std::to_string(exhaustive_limit));
  FlagLayout layout(n);
  std::vector<BitVector> drawn;
  if (!mode.exhaustive) drawn = draw_patterns(layout, mode.samples, mode.seed);
  return Candidates{std::move(layout), std::move(drawn), mode.exhaustive};
}

// Runs fn(slot, begin, end) over `jobs` contiguous slices of [0, total).
template <class Fn>
void run_partitioned(std::uint64_t total, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, jobs);
  if (jobs == 1 || total < 2) {
    fn(std::size_t{0}, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (std::size_t s = 0; s < jobs; ++s) {
    const std::uint64_t begin = total * s / jobs, end = total * (s + 1) / jobs;
    workers.emplace_back([&, s, begin, end] {
      try {
        fn(s, begin, end);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<LieAlgebraF2> sample_flag_nilpotent(std::size_t n, std::uint64_t count, std::uint64_t seed) {
  const FlagLayout layout(n);
  std::vector<LieAlgebraF2> out;
  for (const auto& p : draw_patterns(layout, count, seed)) {
    LieAlgebraF2 l = layout.decode(p);
    if (satisfies_jacobi(l)) out.push_back(std::move(l));
  }
  return out;
}

// ------------------------------------------------------------------- scans

bool operator==(const ScanReport& a, const ScanReport& b) {
  auto same_counterexamples = [&] {
    if (a.counterexamples.size() != b.counterexamples.size()) return false;
    for (std::size_t i = 0; i < a.counterexamples.size(); ++i)
      if (!(a.counterexamples[i].algebra == b.counterexamples[i].algebra) ||
          a.counterexamples[i].verdict != b.counterexamples[i].verdict)
        return false;
    return true;
  };
  return a.dim == b.dim && a.mode.exhaustive == b.mode.exhaustive && a.mode.samples == b.mode.samples &&
         a.mode.seed == b.mode.seed && a.candidates == b.candidates && a.jacobi_passed == b.jacobi_passed &&
         a.consistent == b.consistent && a.w2_true == b.w2_true && a.w2_false == b.w2_false &&
         a.skipped_budget == b.skipped_budget && same_counterexamples() &&
         a.unexercised_branches == b.unexercised_branches;
}

ScanReport scan_problem1(std::size_t n, ScanMode mode, ScanOptions options) {
  const Candidates candidates = make_candidates(n, mode, 6);
  struct Partial {
    ScanReport counts;
    std::vector<std::pair<BitVector, ScanCounterexample>> found;
  };
  std::vector<Partial> partials(std::max<std::size_t>(1, options.jobs));

  run_partitioned(candidates.size(), options.jobs, [&](std::size_t slot, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partials[slot];
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      LieAlgebraF2 l = candidates.algebra(idx);
      if (!satisfies_jacobi(l)) continue;
      ++part.counts.jacobi_passed;
      try {
        const ClassifyVerdict v = classify_lie(l, options.budget_order);
        ++(*v.w2 ? part.counts.w2_true : part.counts.w2_false);
        if (v.verdict == Verdict::kConsistent)
          ++part.counts.consistent;
        else
          part.found.push_back({candidates.pattern(idx), ScanCounterexample{std::move(l), v.verdict}});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBudgetExceeded) throw;
        ++part.counts.w2_false;
        ++part.counts.skipped_budget;
      }
    }
  });

  ScanReport report;
  report.dim = n;
  report.mode = mode;
  report.candidates = candidates.size();
  std::vector<std::pair<BitVector, ScanCounterexample>> found;
  for (auto& p : partials) {
    report.jacobi_passed += p.counts.jacobi_passed;
    report.consistent += p.counts.consistent;
    report.w2_true += p.counts.w2_true;
    report.w2_false += p.counts.w2_false;
    report.skipped_budget += p.counts.skipped_budget;
    for (auto& f : p.found) found.push_back(std::move(f));
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& f : found) report.counterexamples.push_back(std::move(f.second));
  if (report.w2_true == 0) report.unexercised_branches.push_back("w2_true");
  if (report.w2_false == 0) report.unexercised_branches.push_back("w2_false");
  return report;
}

NonsplitReport scan_nonsplit(std::size_t n, ScanMode mode, ScanOptions options) {
  if (!mode.exhaustive && n > 7) throw Error(ErrorCode::kDimTooLarge, "sampled nonsplit scan supports dim <= 7");
  const Candidates candidates = make_candidates(n, mode, 5);
  struct Partial {
    NonsplitReport counts;
    std::vector<NonsplitWitness> witnesses;
  };
  std::vector<Partial> partials(std::max<std::size_t>(1, options.jobs));

  run_partitioned(candidates.size(), options.jobs, [&](std::size_t slot, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partials[slot];
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      LieAlgebraF2 l = candidates.algebra(idx);
      if (!satisfies_jacobi(l)) continue;
      ++part.counts.jacobi_passed;
      FiniteLoop q = lie_to_loop(l);
      if (!is_commutative_automorphic_exp2(q)) continue;
      ++part.counts.automorphic;
      const std::size_t nucleus = middle_nucleus(q).size();
      if (q.order() != 4 * nucleus) continue;
      ++part.counts.nucleus_index4;
      SplitResult split = nuclear_split(q);
      if (split.witness) continue;
      part.witnesses.push_back(NonsplitWitness{std::move(l), std::move(q), 4, std::move(split)});
    }
  });

  NonsplitReport report;
  report.dim = n;
  report.mode = mode;
  report.candidates = candidates.size();
  for (auto& p : partials) {
    report.jacobi_passed += p.counts.jacobi_passed;
    report.automorphic += p.counts.automorphic;
    report.nucleus_index4 += p.counts.nucleus_index4;
    for (auto& w : p.witnesses) report.witnesses.push_back(std::move(w));
  }
  return report;
}

// ------------------------------------------------------------ isomorphism

bool lie_isomorphic(const LieAlgebraF2& a, const LieAlgebraF2& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) return false;
  if (n > 4) throw Error(ErrorCode::kDimTooLarge, "lie_isomorphic supports dim <= 4");
  const SeriesReport sa = series(a), sb = series(b);
  if (sa.lower_central_dims != sb.lower_central_dims || sa.derived_dims != sb.derived_dims) return false;

  const std::uint64_t col_mask = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> p(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
    WordBasis independent;
    bool invertible = true;
    for (std::size_t i = 0; i < n && invertible; ++i) {
      p[i] = (bits >> (i * n)) & col_mask;
      invertible = independent.insert(p[i]);
    }
    if (!invertible) continue;
    auto image = [&](std::uint64_t v) {
      std::uint64_t out = 0;
      for (std::size_t k = 0; k < n; ++k)
        if ((v >> k) & 1u) out ^= p[k];
      return out;
    };
    bool maps = true;
    for (std::size_t i = 0; i < n && maps; ++i)
      for (std::size_t j = i + 1; j < n && maps; ++j)
        maps = image(a.basis_bracket(i, j)) == b.bracket(p[i], p[j]);
    if (maps) return true;
  }
  return false;
}

}  // namespace aloop
