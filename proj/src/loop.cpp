#include "aloop/loop.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>
#include <unordered_set>

#include "aloop/error.hpp"

namespace aloop {

namespace {

struct PermutationHash {
  std::size_t operator()(const std::vector<Element>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : v) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using PermutationSet = std::unordered_set<std::vector<Element>, PermutationHash>;

}  // namespace

// ------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<Element> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (auto x : image_) {
    if (x >= image_.size() || seen[x]) throw Error(ErrorCode::kInvalidArgument, "not a permutation");
    seen[x] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Element> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = static_cast<Element>(i);
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.image_.resize(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) p.image_[image_[i]] = static_cast<Element>(i);
  return p;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::kInvalidArgument, "permutation size mismatch");
  Permutation r;
  r.image_.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r.image_[i] = p.image_[q.image_[i]];
  return r;
}

// -------------------------------------------------------------- FiniteLoop

FiniteLoop FiniteLoop::from_table(std::size_t order, std::vector<Element> table) {
  using Where = LoopAxiomError::Where;
  const std::size_t n = order;
  if (n == 0 || n > kMaxOrder)
    throw Error(ErrorCode::kUnsupportedParams, "loop order must be in 1.." + std::to_string(kMaxOrder));
  if (table.size() != n * n) throw Error(ErrorCode::kInvalidArgument, "Cayley table is not n x n");

  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (table[r * n + c] >= n)
        throw LoopAxiomError(Where::kRange, r, "entry out of range in row " + std::to_string(r));

  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t tick = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++tick;
    for (std::size_t c = 0; c < n; ++c) {
      auto& s = stamp[table[r * n + c]];
      if (s == tick) throw LoopAxiomError(Where::kRow, r, "row " + std::to_string(r) + " repeats an entry");
      s = tick;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    ++tick;
    for (std::size_t r = 0; r < n; ++r) {
      auto& s = stamp[table[r * n + c]];
      if (s == tick) throw LoopAxiomError(Where::kColumn, c, "column " + std::to_string(c) + " repeats an entry");
      s = tick;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (table[x] != x) throw LoopAxiomError(Where::kIdentity, x, "row 0 is not the identity (element 0 is not a unit)");
    if (table[x * n] != x)
      throw LoopAxiomError(Where::kIdentity, x, "column 0 is not the identity (element 0 is not a unit)");
  }

  FiniteLoop q;
  q.n_ = n;
  q.table_ = std::move(table);
  q.ldiv_.resize(n * n);
  q.rdiv_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x) {
      const Element p = q.table_[a * n + x];
      q.ldiv_[a * n + p] = static_cast<Element>(x);
      // table[a][x] = p, so p / x = a.
      q.rdiv_[std::size_t{p} * n + x] = static_cast<Element>(a);
    }
  return q;
}

FiniteLoop FiniteLoop::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Element> table;
  table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw Error(ErrorCode::kInvalidArgument, "Cayley table is not square");
    for (int v : rows[r]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw LoopAxiomError(LoopAxiomError::Where::kRange, r, "entry out of range in row " + std::to_string(r));
      table.push_back(static_cast<Element>(v));
    }
  }
  return from_table(n, std::move(table));
}

std::vector<std::vector<int>> FiniteLoop::to_rows() const {
  std::vector<std::vector<int>> rows(n_, std::vector<int>(n_));
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) rows[r][c] = table_[r * n_ + c];
  return rows;
}

Element divide(const FiniteLoop& q, Side side, Element a, Element b) {
  if (a >= q.order() || b >= q.order()) throw Error(ErrorCode::kInvalidArgument, "element out of range");
  return side == Side::kLeft ? q.left_div(a, b) : q.right_div(b, a);
}

// ------------------------------------------------------------- predicates

bool is_commutative(const FiniteLoop& q) {
  const std::size_t n = q.order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (q.mul(static_cast<Element>(a), static_cast<Element>(b)) !=
          q.mul(static_cast<Element>(b), static_cast<Element>(a)))
        return false;
  return true;
}

bool is_associative_on(const FiniteLoop& q, std::span<const Element> s) {
  for (auto x : s)
    for (auto y : s) {
      const Element xy = q.mul(x, y);
      for (auto z : s)
        if (q.mul(xy, z) != q.mul(x, q.mul(y, z))) return false;
    }
  return true;
}

bool is_associative(const FiniteLoop& q) {
  std::vector<Element> all(q.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Element>(i);
  return is_associative_on(q, all);
}

LoopPredicates predicates(const FiniteLoop& q) {
  LoopPredicates p;
  p.commutative = is_commutative(q);
  p.exponent2 = true;
  for (std::size_t x = 0; x < q.order(); ++x)
    if (q.mul(static_cast<Element>(x), static_cast<Element>(x)) != 0) p.exponent2 = false;
  p.associative = is_associative(q);
  return p;
}

// --------------------------------------------------------- inner mappings

void for_each_inner_generator(const FiniteLoop& q, bool commutative_reduced,
                              const std::function<bool(const Permutation&)>& visit) {
  const std::size_t n = q.order();
  std::vector<Element> image(n);
  auto emit = [&]() { return visit(Permutation(image)); };

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
      const Element xy = q.mul(ex, ey);
      for (std::size_t z = 0; z < n; ++z) image[z] = q.left_div(xy, q.mul(ex, q.mul(ey, static_cast<Element>(z))));
      if (!emit()) return;
    }
  if (commutative_reduced) return;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
      const Element xy = q.mul(ex, ey);
      for (std::size_t z = 0; z < n; ++z) image[z] = q.right_div(q.mul(q.mul(static_cast<Element>(z), ex), ey), xy);
      if (!emit()) return;
    }
  for (std::size_t x = 0; x < n; ++x) {
    const auto ex = static_cast<Element>(x);
    for (std::size_t z = 0; z < n; ++z) image[z] = q.left_div(ex, q.mul(static_cast<Element>(z), ex));
    if (!emit()) return;
  }
}

std::vector<Permutation> inner_generators(const FiniteLoop& q) {
  std::vector<Permutation> out;
  for_each_inner_generator(q, is_commutative(q), [&](const Permutation& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

namespace {

bool is_homomorphism(const FiniteLoop& q, const Permutation& s) {
  const std::size_t n = q.order();
  for (std::size_t a = 0; a < n; ++a) {
    const Element sa = s(static_cast<Element>(a));
    for (std::size_t b = 0; b < n; ++b) {
      const auto ea = static_cast<Element>(a), eb = static_cast<Element>(b);
      if (s(q.mul(ea, eb)) != q.mul(sa, s(eb))) return false;
    }
  }
  return true;
}

}  // namespace

bool is_automorphic(const FiniteLoop& q, AutomorphicMethod method) {
  const std::size_t n = q.order();
  const bool reduced = is_commutative(q);
  PermutationSet checked;
  bool ok = true;

  if (method == AutomorphicMethod::kDirect) {
    for_each_inner_generator(q, reduced, [&](const Permutation& s) {
      if (s.is_identity() || !checked.insert(s.image()).second) return true;
      ok = is_homomorphism(q, s);
      return ok;
    });
    return ok;
  }

  PermutationSet section;
  std::vector<Element> image(n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) image[x] = q.mul(static_cast<Element>(x), static_cast<Element>(y));
    section.insert(image);
  }
  for_each_inner_generator(q, reduced, [&](const Permutation& s) {
    if (s.is_identity() || !checked.insert(s.image()).second) return true;
    const Permutation s_inv = s.inverse();
    // Conjugation is injective, so containment of every s^-1 R_y s in R gives equality.
    for (std::size_t y = 0; y < n && ok; ++y) {
      for (std::size_t x = 0; x < n; ++x) image[x] = s_inv(q.mul(s(static_cast<Element>(x)), static_cast<Element>(y)));
      ok = section.count(image) != 0;
    }
    return ok;
  });
  return ok;
}

// ------------------------------------------------------------------ nuclei

Nuclei nuclei_and_center(const FiniteLoop& q) {
  const std::size_t n = q.order();
  Nuclei out;
  for (std::size_t ia = 0; ia < n; ++ia) {
    const auto a = static_cast<Element>(ia);
    bool left = true, middle = true, right = true, commutes = true;
    for (std::size_t ix = 0; ix < n; ++ix) {
      const auto x = static_cast<Element>(ix);
      if (q.mul(a, x) != q.mul(x, a)) commutes = false;
      for (std::size_t iy = 0; iy < n; ++iy) {
        const auto y = static_cast<Element>(iy);
        if (left && q.mul(a, q.mul(x, y)) != q.mul(q.mul(a, x), y)) left = false;
        if (middle && q.mul(x, q.mul(a, y)) != q.mul(q.mul(x, a), y)) middle = false;
        if (right && q.mul(x, q.mul(y, a)) != q.mul(q.mul(x, y), a)) right = false;
      }
    }
    if (left) out.left.push_back(a);
    if (middle) out.middle.push_back(a);
    if (right) out.right.push_back(a);
    if (commutes) out.commutant.push_back(a);
    if (left && middle && right && commutes) out.center.push_back(a);
  }
  return out;
}

std::vector<Element> middle_nucleus(const FiniteLoop& q) {
  const std::size_t n = q.order();
  std::vector<Element> out;
  for (std::size_t ia = 0; ia < n; ++ia) {
    const auto a = static_cast<Element>(ia);
    bool middle = true;
    for (std::size_t ix = 0; ix < n && middle; ++ix)
      for (std::size_t iy = 0; iy < n && middle; ++iy) {
        const auto x = static_cast<Element>(ix), y = static_cast<Element>(iy);
        middle = q.mul(x, q.mul(a, y)) == q.mul(q.mul(x, a), y);
      }
    if (middle) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------- subloops

namespace {

// Elements of a subloop plus a membership mask.
struct Subset {
  std::vector<Element> elements;
  std::vector<std::uint64_t> mask;

  explicit Subset(std::size_t n) : mask((n + 63) / 64, 0) {}
  bool contains(Element x) const { return (mask[x / 64] >> (x % 64)) & 1u; }
  bool add(Element x) {
    if (contains(x)) return false;
    mask[x / 64] |= std::uint64_t{1} << (x % 64);
    elements.push_back(x);
    return true;
  }
  std::vector<Element> sorted() const {
    auto s = elements;
    std::sort(s.begin(), s.end());
    return s;
  }
};

// Closes `s` in place; elements before `first_new` are assumed already closed among themselves.
void close(const FiniteLoop& q, Subset& s, std::size_t first_new) {
  for (std::size_t i = first_new; i < s.elements.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Element a = s.elements[i], b = s.elements[j];
      s.add(q.mul(a, b));
      s.add(q.mul(b, a));
      s.add(q.left_div(a, b));
      s.add(q.left_div(b, a));
      s.add(q.right_div(a, b));
      s.add(q.right_div(b, a));
    }
}

Subset extend(const FiniteLoop& q, const Subset& closed, Element x) {
  Subset t = closed;
  const std::size_t first_new = t.elements.size();
  t.add(x);
  close(q, t, first_new);
  return t;
}

Subset trivial_subloop(std::size_t n) {
  Subset s(n);
  s.add(0);
  return s;
}

bool canonical_less(const std::vector<Element>& a, const std::vector<Element>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Breadth-first walk of the closure lattice from {0}: level L holds closures of
// L-element sets. `admit(x)` filters extension elements and `keep(T)` prunes.
template <class Admit, class Keep>
std::vector<Subset> walk_subloops(const FiniteLoop& q, std::size_t max_depth, std::size_t budget, Admit admit,
                                  Keep keep) {
  const std::size_t n = q.order();
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Subset> all;
  std::vector<Subset> frontier{trivial_subloop(n)};
  seen.insert(frontier.front().mask);
  all.push_back(frontier.front());
  std::size_t closures = 0;
  for (std::size_t depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<Subset> next;
    for (const auto& s : frontier)
      for (std::size_t ix = 0; ix < n; ++ix) {
        const auto x = static_cast<Element>(ix);
        if (s.contains(x) || !admit(x)) continue;
        if (++closures > budget)
          throw Error(ErrorCode::kSizeLimit,
                      "subloop enumeration exceeded the closure budget of " + std::to_string(budget));
        Subset t = extend(q, s, x);
        if (!keep(t) || !seen.insert(t.mask).second) continue;
        all.push_back(t);
        next.push_back(std::move(t));
      }
    frontier = std::move(next);
  }
  return all;
}

}  // namespace

std::vector<Element> closure(const FiniteLoop& q, std::span<const Element> generators) {
  Subset s = trivial_subloop(q.order());
  for (auto g : generators) {
    if (g >= q.order()) throw Error(ErrorCode::kInvalidArgument, "element out of range");
    s.add(g);
  }
  close(q, s, 0);
  return s.sorted();
}

bool is_subloop(const FiniteLoop& q, std::span<const Element> subset) {
  if (subset.empty()) return false;
  auto sorted = std::vector<Element>(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return closure(q, sorted) == sorted;
}

std::vector<std::vector<Element>> subloops(const FiniteLoop& q, SubloopOptions options) {
  std::size_t max_generators = options.max_generators;
  if (max_generators == 0) max_generators = static_cast<std::size_t>(std::bit_width(q.order() - 1)) + 1;
  auto found = walk_subloops(
      q, max_generators, options.closure_budget, [](Element) { return true; }, [](const Subset&) { return true; });
  std::vector<std::vector<Element>> out;
  for (const auto& s : found) out.push_back(s.sorted());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool is_normal(const FiniteLoop& q, std::span<const Element> subloop) {
  if (!is_subloop(q, subloop)) throw Error(ErrorCode::kNotASubloop, "subset is not a subloop");
  std::vector<char> member(q.order(), 0);
  for (auto k : subloop) member[k] = 1;
  bool normal = true;
  for_each_inner_generator(q, is_commutative(q), [&](const Permutation& s) {
    for (auto k : subloop)
      if (!member[s(k)]) {
        normal = false;
        break;
      }
    return normal;
  });
  return normal;
}

// ------------------------------------------------------------ nuclear split

namespace {

std::vector<std::vector<std::vector<std::size_t>>> read_off_phi(const FiniteLoop& q, const std::vector<Element>& k_part,
                                                                const std::vector<Element>& h_part) {
  const std::size_t n = q.order();
  // Element a*h_i decomposes as (a, i); requires that map to be a bijection.
  std::vector<std::ptrdiff_t> k_of(n, -1), h_of(n, -1);
  for (std::size_t i = 0; i < h_part.size(); ++i)
    for (std::size_t a = 0; a < k_part.size(); ++a) {
      const Element p = q.mul(k_part[a], h_part[i]);
      if (k_of[p] != -1) return {};
      k_of[p] = static_cast<std::ptrdiff_t>(a);
      h_of[p] = static_cast<std::ptrdiff_t>(i);
    }
  std::vector<std::vector<std::vector<std::size_t>>> phi(
      h_part.size(), std::vector<std::vector<std::size_t>>(h_part.size(), std::vector<std::size_t>(k_part.size())));
  // (a, i) * (0, j) = (phi_{i,j}(a), i + j).
  for (std::size_t i = 0; i < h_part.size(); ++i)
    for (std::size_t j = 0; j < h_part.size(); ++j)
      for (std::size_t a = 0; a < k_part.size(); ++a)
        phi[i][j][a] = static_cast<std::size_t>(k_of[q.mul(q.mul(k_part[a], h_part[i]), h_part[j])]);
  return phi;
}

}  // namespace

SplitResult nuclear_split(const FiniteLoop& q, std::size_t closure_budget) {
  const std::size_t n = q.order();
  SplitResult result;

  const auto nucleus = middle_nucleus(q);
  std::vector<char> in_nucleus(n, 0);
  for (auto a : nucleus) in_nucleus[a] = 1;
  auto k_sets = walk_subloops(
      q, n, closure_budget, [&](Element x) { return in_nucleus[x] != 0; }, [](const Subset&) { return true; });
  std::vector<std::vector<Element>> k_candidates;
  for (const auto& s : k_sets) {
    auto sorted = s.sorted();
    if (is_normal(q, sorted)) k_candidates.push_back(std::move(sorted));
  }
  std::sort(k_candidates.begin(), k_candidates.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });

  auto product_is_everything = [&](const std::vector<Element>& h, const std::vector<Element>& k) {
    std::vector<char> hit(n, 0);
    std::size_t count = 0;
    for (auto x : h)
      for (auto y : k)
        if (!hit[q.mul(x, y)]++) ++count;
    return count == n;
  };
  auto accept = [&](const std::vector<Element>& h, const std::vector<Element>& k) {
    ++result.h_candidates;
    if (!is_associative_on(q, h) || !product_is_everything(h, k)) return false;
    result.witness = SplitWitness{k, h, read_off_phi(q, k, h)};
    return true;
  };

  for (const auto& k : k_candidates) {
    ++result.k_candidates;
    if (n % k.size() != 0) continue;
    const std::size_t target = n / k.size();
    std::vector<char> in_k(n, 0);
    for (auto a : k) in_k[a] = 1;

    if (target == 1) {
      if (accept({0}, k)) return result;
      continue;
    }
    if (k.size() == 1) {
      std::vector<Element> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Element>(i);
      if (accept(all, k)) return result;
      continue;
    }
    // Subloops meeting K trivially with at most `target` elements; both
    // properties pass to every subloop inside, so pruning keeps the walk exhaustive.
    auto h_sets = walk_subloops(
        q, n, closure_budget, [&](Element x) { return in_k[x] == 0; },
        [&](const Subset& t) {
          if (t.elements.size() > target) return false;
          for (auto x : t.elements)
            if (x != 0 && in_k[x]) return false;
          return true;
        });
    std::vector<std::vector<Element>> hs;
    for (const auto& s : h_sets)
      if (s.elements.size() == target) hs.push_back(s.sorted());
    std::sort(hs.begin(), hs.end());
    for (const auto& h : hs)
      if (accept(h, k)) return result;
  }
  return result;
}

LoopReport analyze(const FiniteLoop& q, bool with_split) {
  LoopReport report;
  report.order = q.order();
  report.flags = predicates(q);
  report.automorphic = is_automorphic(q, AutomorphicMethod::kDirect);
  report.nuclei = nuclei_and_center(q);
  if (with_split) report.split = nuclear_split(q);
  return report;
}

}  // namespace aloop
