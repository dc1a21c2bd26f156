#include "aloop/lie.hpp"

#include <bit>
#include <map>
#include <string>
#include <utility>

#include "aloop/error.hpp"

namespace aloop {

namespace {

template <class F>
void for_each_bit(std::uint64_t word, F&& f) {
  while (word != 0) {
    f(static_cast<std::size_t>(std::countr_zero(word)));
    word &= word - 1;
  }
}

std::uint64_t unit_word(std::size_t k) { return std::uint64_t{1} << k; }

std::uint64_t full_mask(std::size_t dim) {
  return dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
}

// Basis brackets c[i][j] = [e_i, e_j] as a dense symmetric table.
std::vector<std::uint64_t> dense_table(const LieAlgebraF2& l) {
  const std::size_t n = l.dim();
  std::vector<std::uint64_t> t(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t[i * n + j] = t[j * n + i] = l.basis_bracket(i, j);
  return t;
}

}  // namespace

// ------------------------------------------------------------ LieAlgebraF2

LieAlgebraF2::LieAlgebraF2(std::size_t dim) : dim_(dim) {
  if (dim > kMaxDim)
    throw Error(ErrorCode::kUnsupportedParams, "Lie algebra dim " + std::to_string(dim) + " exceeds 64");
  upper_.assign(dim * (dim == 0 ? 0 : dim - 1) / 2, 0);
}

std::size_t LieAlgebraF2::index(std::size_t i, std::size_t j) const {
  // i < j; rows of the strict upper triangle laid out consecutively.
  return i * (2 * dim_ - i - 1) / 2 + (j - i - 1);
}

std::uint64_t LieAlgebraF2::basis_bracket(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
  if (i == j) return 0;
  if (i > j) std::swap(i, j);
  return upper_[index(i, j)];
}

void LieAlgebraF2::set_basis_bracket(std::size_t i, std::size_t j, std::uint64_t value) {
  if (i >= dim_ || j >= dim_) throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
  if (i == j) throw Error(ErrorCode::kInvalidArgument, "[e_i, e_i] is zero by definition");
  if ((value & ~full_mask(dim_)) != 0)
    throw Error(ErrorCode::kInvalidArgument, "bracket value has coordinates beyond dim");
  if (i > j) std::swap(i, j);
  upper_[index(i, j)] = value;
}

std::uint64_t LieAlgebraF2::bracket(std::uint64_t x, std::uint64_t y) const {
  std::uint64_t acc = 0;
  for_each_bit(x, [&](std::size_t i) {
    for_each_bit(y & ~unit_word(i), [&](std::size_t j) {
      acc ^= i < j ? upper_[index(i, j)] : upper_[index(j, i)];
    });
  });
  return acc;
}

BitVector LieAlgebraF2::bracket(const BitVector& x, const BitVector& y) const {
  if (x.dim() != dim_ || y.dim() != dim_) throw Error(ErrorCode::kInvalidArgument, "element dim mismatch");
  return BitVector::from_word(dim_, bracket(x.to_word(), y.to_word()));
}

// -------------------------------------------------------------- validation

namespace {

std::optional<std::array<std::size_t, 3>> first_jacobi_failure(const LieAlgebraF2& l,
                                                               std::uint64_t* residual) {
  const std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::uint64_t sum = l.bracket(l.basis_bracket(i, j), unit_word(k)) ^
                                  l.bracket(l.basis_bracket(j, k), unit_word(i)) ^
                                  l.bracket(l.basis_bracket(k, i), unit_word(j));
        if (sum != 0) {
          if (residual) *residual = sum;
          return std::array<std::size_t, 3>{i, j, k};
        }
      }
  return std::nullopt;
}

}  // namespace

void validate(const LieAlgebraF2& algebra) {
  std::uint64_t residual = 0;
  if (auto t = first_jacobi_failure(algebra, &residual)) {
    throw JacobiError((*t)[0], (*t)[1], (*t)[2],
                      "Jacobi identity fails on basis triple (" + std::to_string((*t)[0]) + ", " +
                          std::to_string((*t)[1]) + ", " + std::to_string((*t)[2]) + "), residual bits " +
                          std::to_string(residual));
  }
}

bool satisfies_jacobi(const LieAlgebraF2& algebra) {
  return !first_jacobi_failure(algebra, nullptr).has_value();
}

BitMatrix ad_matrix(const LieAlgebraF2& algebra, const BitVector& x) {
  const std::size_t n = algebra.dim();
  std::vector<BitVector> cols;
  for (std::size_t k = 0; k < n; ++k) cols.push_back(algebra.bracket(x, BitVector::unit(n, k)));
  return BitMatrix::from_columns(n, cols);
}

// ------------------------------------------------------------------ series

SeriesReport series(const LieAlgebraF2& algebra) {
  const std::size_t n = algebra.dim();
  SeriesReport report;

  auto advance = [&](auto&& next_of, std::vector<std::size_t>& dims) {
    std::vector<std::uint64_t> current;
    for (std::size_t k = 0; k < n; ++k) current.push_back(unit_word(k));
    dims.push_back(n);
    while (!current.empty()) {
      WordBasis next;
      next_of(current, next);
      if (next.size() == current.size()) break;
      current = next.vectors();
      dims.push_back(current.size());
    }
  };

  advance(
      [&](const std::vector<std::uint64_t>& cur, WordBasis& next) {
        for (std::size_t i = 0; i < n; ++i)
          for (auto v : cur) next.insert(algebra.bracket(unit_word(i), v));
      },
      report.lower_central_dims);
  advance(
      [&](const std::vector<std::uint64_t>& cur, WordBasis& next) {
        for (std::size_t a = 0; a < cur.size(); ++a)
          for (std::size_t b = a + 1; b < cur.size(); ++b) next.insert(algebra.bracket(cur[a], cur[b]));
      },
      report.derived_dims);
  report.nilpotent = report.lower_central_dims.back() == 0;
  return report;
}

// ------------------------------------------------------------- W properties

std::optional<std::uint64_t> find_w1_violation(const LieAlgebraF2& algebra) {
  if (series(algebra).nilpotent) return std::nullopt;
  const std::size_t n = algebra.dim();
  if (n > 24)
    throw Error(ErrorCode::kUnsupportedParams, "W1 check on a non-nilpotent algebra needs dim <= 24");
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << n); ++x) {
    WordBasis cols;
    bool invertible = true;
    for (std::size_t k = 0; k < n && invertible; ++k)
      invertible = cols.insert(unit_word(k) ^ algebra.bracket(x, unit_word(k)));
    if (!invertible) return x;
  }
  return std::nullopt;
}

bool check_w1(const LieAlgebraF2& algebra) { return !find_w1_violation(algebra).has_value(); }

bool check_w2(const LieAlgebraF2& algebra) {
  const std::size_t n = algebra.dim();
  const auto c = dense_table(algebra);
  auto br = [&](std::size_t a, std::size_t b) { return c[a * n + b]; };
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t z = 0; z < n; ++z) {
        if (algebra.bracket(br(x, y), br(z, y)) != 0) return false;
        for (std::size_t w = y + 1; w < n; ++w)
          if ((algebra.bracket(br(x, y), br(z, w)) ^ algebra.bracket(br(x, w), br(z, y))) != 0) return false;
      }
  return true;
}

bool check_w2plus(const LieAlgebraF2& algebra, W2PlusMethod method) {
  const std::size_t n = algebra.dim();
  if (method == W2PlusMethod::kDerivedSeries) {
    const auto dims = series(algebra).derived_dims;
    return dims.size() < 3 ? dims.back() == 0 : dims[2] == 0;
  }
  std::vector<std::uint64_t> pair_brackets;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pair_brackets.push_back(algebra.basis_bracket(i, j));
  for (std::size_t a = 0; a < pair_brackets.size(); ++a)
    for (std::size_t b = a + 1; b < pair_brackets.size(); ++b)
      if (algebra.bracket(pair_brackets[a], pair_brackets[b]) != 0) return false;
  return true;
}

LieAlgebraF2 change_basis(const LieAlgebraF2& algebra, const BitMatrix& basis) {
  const std::size_t n = algebra.dim();
  if (basis.rows() != n || basis.cols() != n)
    throw Error(ErrorCode::kInvalidArgument, "basis change matrix has the wrong shape");
  const BitMatrix inverse = invert(basis);
  std::vector<std::uint64_t> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(basis.column(i).to_word());
  LieAlgebraF2 out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.set_basis_bracket(i, j, inverse.apply_word(algebra.bracket(p[i], p[j])));
  return out;
}

// ----------------------------------------------------------------- catalog

LieAlgebraF2 make_abelian(std::size_t dim) { return LieAlgebraF2(dim); }

LieAlgebraF2 make_heisenberg() {
  LieAlgebraF2 l(3);
  l.set_basis_bracket(0, 1, unit_word(2));
  return l;
}

std::size_t witt_dimension(std::size_t generators, std::size_t weight) {
  auto mobius = [](std::size_t d) {
    int result = 1;
    for (std::size_t p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      d /= p;
      if (d % p == 0) return 0;
      result = -result;
    }
    if (d > 1) result = -result;
    return result;
  };
  long long total = 0;
  for (std::size_t d = 1; d <= weight; ++d) {
    if (weight % d != 0) continue;
    long long power = 1;
    for (std::size_t e = 0; e < weight / d; ++e) power *= static_cast<long long>(generators);
    total += mobius(d) * power;
  }
  return static_cast<std::size_t>(total / static_cast<long long>(weight));
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Collection of brackets of Hall elements into the Hall basis, modulo weight > class.
// Signs vanish over F2, so Jacobi reads [[a1,a2],b] = [[a1,b],a2] + [a1,[a2,b]].
class HallCollector {
 public:
  HallCollector(const std::vector<HallElement>& basis, std::size_t nil_class) : basis_(basis), class_(nil_class) {
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (basis[k].left != kNone) index_[{basis[k].left, basis[k].right}] = k;
  }

  std::uint64_t reduce(std::size_t a, std::size_t b, int depth = 0) {
    if (depth > 256) throw Error(ErrorCode::kInternal, "Hall collection did not terminate");
    if (a == b || basis_[a].weight + basis_[b].weight > class_) return 0;
    if (a < b) std::swap(a, b);
    if (auto it = memo_.find({a, b}); it != memo_.end()) return it->second;
    std::uint64_t result = 0;
    const HallElement& e = basis_[a];
    if (e.left == kNone || e.right <= b) {
      result = unit_word(index_.at({a, b}));
    } else {
      for_each_bit(reduce(e.left, b, depth + 1),
                   [&](std::size_t p) { result ^= reduce(p, e.right, depth + 1); });
      for_each_bit(reduce(e.right, b, depth + 1),
                   [&](std::size_t q) { result ^= reduce(e.left, q, depth + 1); });
    }
    memo_[{a, b}] = result;
    return result;
  }

 private:
  const std::vector<HallElement>& basis_;
  std::size_t class_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> memo_;
};

}  // namespace

FreeNilpotent make_free_nilpotent(std::size_t generators, std::size_t nil_class) {
  if (generators < 2 || generators > 3 || nil_class < 2 || nil_class > 4)
    throw Error(ErrorCode::kUnsupportedParams, "free_nilpotent supports generators in {2,3} and class in {2,3,4}");
  std::size_t dim = 0;
  for (std::size_t w = 1; w <= nil_class; ++w) dim += witt_dimension(generators, w);
  if (dim > 32) throw Error(ErrorCode::kUnsupportedParams, "free_nilpotent dimension exceeds 32");

  FreeNilpotent out;
  for (std::size_t g = 0; g < generators; ++g) out.basis.push_back(HallElement{1, kNone, kNone, g});
  out.weight_dims.push_back(generators);
  for (std::size_t w = 2; w <= nil_class; ++w) {
    const std::size_t existing = out.basis.size();
    for (std::size_t a = 0; a < existing; ++a)
      for (std::size_t b = 0; b < a; ++b) {
        const HallElement& ea = out.basis[a];
        if (ea.weight + out.basis[b].weight != w) continue;
        if (ea.left != kNone && ea.right > b) continue;
        out.basis.push_back(HallElement{w, a, b, 0});
      }
    out.weight_dims.push_back(out.basis.size() - existing);
  }

  HallCollector collector(out.basis, nil_class);
  out.algebra = LieAlgebraF2(out.basis.size());
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = i + 1; j < out.basis.size(); ++j)
      out.algebra.set_basis_bracket(i, j, collector.reduce(i, j));
  validate(out.algebra);
  return out;
}

}  // namespace aloop
