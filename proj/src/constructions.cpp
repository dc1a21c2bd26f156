#include "aloop/constructions.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <string>

namespace aloop {

namespace {

constexpr std::size_t kMaxLoopBits = 14;

std::string pair_str(std::uint64_t a, std::uint64_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

std::string triple_str(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

// table[v] = M v for every v in F2^cols.
std::vector<std::uint64_t> action_table(const BitMatrix& m) {
  std::vector<std::uint64_t> t(std::size_t{1} << m.cols(), 0);
  for (std::size_t v = 1; v < t.size(); ++v) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(v));
    t[v] = t[v & (v - 1)] ^ m.column(low).to_word();
  }
  return t;
}

std::vector<std::uint64_t> span_words(const std::vector<BitVector>& basis) {
  std::vector<std::uint64_t> out{0};
  for (const auto& b : basis) {
    const std::size_t half = out.size();
    for (std::size_t i = 0; i < half; ++i) out.push_back(out[i] ^ b.to_word());
  }
  std::sort(out.begin(), out.end());
  return out;
}

BitVector flatten(const BitMatrix& m) {
  BitVector v(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) v.set(r * m.cols() + c);
  return v;
}

FiniteLoop build_beta_table(const BetaMap& beta) {
  const std::size_t k = beta.k_dim;
  const std::size_t h_size = std::size_t{1} << beta.h_dim;
  const std::size_t k_size = std::size_t{1} << k;
  const std::uint64_t k_mask = k_size - 1;
  std::vector<std::vector<std::uint64_t>> act;
  for (std::size_t i = 0; i < h_size; ++i) act.push_back(action_table(beta.at(i)));
  const std::size_t n = beta.order();
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint64_t a = x & k_mask, i = x >> k;
    for (std::size_t y = 0; y < n; ++y) {
      const std::uint64_t b = y & k_mask, j = y >> k;
      table[x * n + y] = static_cast<Element>((a ^ b ^ act[j][a] ^ act[i][b]) | ((i ^ j) << k));
    }
  }
  return FiniteLoop::from_table(n, std::move(table));
}

std::vector<Element> k_part_elements(std::size_t k_dim) {
  std::vector<Element> k(std::size_t{1} << k_dim);
  for (std::size_t a = 0; a < k.size(); ++a) k[a] = static_cast<Element>(a);
  return k;
}

void require_centerless(const FiniteLoop& q) {
  if (nuclei_and_center(q).center != std::vector<Element>{0})
    throw Error(ErrorCode::kInternal, "construction expected a trivial center");
}

}  // namespace

bool is_commutative_automorphic_exp2(const FiniteLoop& q) {
  if (!is_commutative(q)) return false;
  for (std::size_t x = 0; x < q.order(); ++x)
    if (q.mul(static_cast<Element>(x), static_cast<Element>(x)) != 0) return false;
  return is_automorphic(q, AutomorphicMethod::kDirect);
}

// ----------------------------------------------------------- Lie ring loop

FiniteLoop lie_to_loop(const LieAlgebraF2& algebra) {
  const std::size_t dim = algebra.dim();
  if (dim > kMaxLoopBits)
    throw Error(ErrorCode::kUnsupportedParams, "loop of order 2^" + std::to_string(dim) + " is too large");
  if (auto x = find_w1_violation(algebra))
    throw W1Violation(*x, "W1 fails: id + ad_x is singular for x = " + std::to_string(*x));

  const std::size_t n = std::size_t{1} << dim;
  // ad[b][y] = [e_b, y]
  std::vector<std::vector<std::uint64_t>> ad(dim, std::vector<std::uint64_t>(n, 0));
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t y = 1; y < n; ++y)
      ad[b][y] = ad[b][y & (y - 1)] ^ algebra.basis_bracket(b, static_cast<std::size_t>(std::countr_zero(y)));

  std::vector<Element> table(n * n);
  for (std::size_t y = 0; y < n; ++y) table[y] = static_cast<Element>(y);
  for (std::size_t x = 1; x < n; ++x) {
    // [x, y] = [x - e_b, y] + [e_b, y], the first read back from an earlier row.
    const std::size_t prev = x & (x - 1);
    const auto& ad_b = ad[static_cast<std::size_t>(std::countr_zero(x))];
    for (std::size_t y = 0; y < n; ++y) {
      const std::uint64_t prev_bracket = table[prev * n + y] ^ prev ^ y;
      table[x * n + y] = static_cast<Element>(x ^ y ^ prev_bracket ^ ad_b[y]);
    }
  }
  return FiniteLoop::from_table(n, std::move(table));
}

std::uint64_t lie_left_divide(const LieAlgebraF2& algebra, std::uint64_t x, std::uint64_t z) {
  const std::size_t n = algebra.dim();
  BitMatrix m = ad_matrix(algebra, BitVector::from_word(n, x)) + BitMatrix::identity(n);
  return invert(m).apply_word(z ^ x);
}

std::vector<Element> bracket_annihilator_of_derived(const LieAlgebraF2& algebra) {
  const std::size_t n = algebra.dim();
  if (n > kMaxLoopBits) throw Error(ErrorCode::kUnsupportedParams, "algebra too large to enumerate");
  WordBasis derived;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) derived.insert(algebra.basis_bracket(i, j));
  std::vector<Element> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    bool kills = true;
    for (auto c : derived.vectors())
      if (algebra.bracket(c, a) != 0) {
        kills = false;
        break;
      }
    if (kills) out.push_back(static_cast<Element>(a));
  }
  return out;
}

// ------------------------------------------------------------------- beta

BitMatrix BetaMap::at(std::uint64_t i) const {
  BitMatrix m(k_dim, k_dim);
  for (std::size_t l = 0; l < h_dim; ++l)
    if ((i >> l) & 1u) m += matrices.at(l);
  return m;
}

void validate_beta(const BetaMap& beta) {
  if (beta.matrices.size() != beta.h_dim)
    throw Error(ErrorCode::kInvalidArgument, "beta needs exactly h_dim matrices");
  if (beta.k_dim + beta.h_dim > kMaxLoopBits)
    throw Error(ErrorCode::kUnsupportedParams, "k_dim + h_dim exceeds 14");
  for (const auto& m : beta.matrices)
    if (m.rows() != beta.k_dim || m.cols() != beta.k_dim)
      throw Error(ErrorCode::kInvalidArgument, "beta matrices must be k_dim x k_dim");
  for (std::size_t l = 0; l < beta.h_dim; ++l)
    for (std::size_t r = l + 1; r < beta.h_dim; ++r)
      if (beta.matrices[l] * beta.matrices[r] != beta.matrices[r] * beta.matrices[l])
        throw Error(ErrorCode::kNonCommutingBeta,
                    "beta(e_" + std::to_string(l) + ") and beta(e_" + std::to_string(r) + ") do not commute");
  const BitMatrix id = BitMatrix::identity(beta.k_dim);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << beta.h_dim); ++i)
    if (rank(id + beta.at(i)) < beta.k_dim)
      throw Error(ErrorCode::kSingularIdPlusBeta, "id + beta(i) is singular for i = " + std::to_string(i));
}

LieAlgebraF2 beta_lie_algebra(const BetaMap& beta) {
  const std::size_t k = beta.k_dim;
  LieAlgebraF2 l(k + beta.h_dim);
  for (std::size_t h = 0; h < beta.h_dim; ++h)
    for (std::size_t a = 0; a < k; ++a) l.set_basis_bracket(a, k + h, beta.matrices.at(h).column(a).to_word());
  return l;
}

FiniteLoop beta_loop(const BetaMap& beta) {
  validate_beta(beta);
  FiniteLoop q = build_beta_table(beta);
  if (!is_commutative_automorphic_exp2(q))
    throw Error(ErrorCode::kInternal, "beta-loop failed the commutative automorphic exponent-2 check");
  return q;
}

// -------------------------------------------------------------------- phi

void validate_phi_family(const PhiFamily& phi) {
  const std::size_t hs = phi.h_size();
  const std::size_t k = phi.k_dim;
  if (phi.members.size() != hs * hs) throw PhiConditionError("shape", "Phi needs 2^h_dim x 2^h_dim members");
  for (const auto& m : phi.members)
    if (m.rows() != k || m.cols() != k) throw PhiConditionError("shape", "Phi members must be k_dim x k_dim");
  const BitMatrix id = BitMatrix::identity(k);

  for (std::uint64_t i = 0; i < hs; ++i)
    for (std::uint64_t j = 0; j < hs; ++j) {
      if (rank(phi.at(i, j)) < k)
        throw PhiConditionError("invertible", "phi" + pair_str(i, j) + " is not invertible");
      if (phi.at(i, j) != phi.at(j, i))
        throw PhiConditionError("symmetry", "phi" + pair_str(i, j) + " != phi" + pair_str(j, i));
    }
  for (std::uint64_t i = 0; i < hs; ++i)
    if (phi.at(0, i) != id) throw PhiConditionError("identity", "phi" + pair_str(0, i) + " is not the identity");

  std::vector<BitMatrix> distinct;
  {
    std::set<std::vector<std::vector<int>>> seen;
    for (const auto& m : phi.members)
      if (seen.insert(m.to_rows()).second) distinct.push_back(m);
  }
  for (std::size_t a = 0; a < distinct.size(); ++a)
    for (std::size_t b = a + 1; b < distinct.size(); ++b)
      if (distinct[a] * distinct[b] != distinct[b] * distinct[a])
        throw PhiConditionError("commuting", "two members of Phi do not commute");

  for (std::uint64_t i = 0; i < hs; ++i)
    for (std::uint64_t j = 0; j < hs; ++j)
      for (std::uint64_t l = 0; l < hs; ++l) {
        if (phi.at(i, j ^ l) * phi.at(j, l) != phi.at(l, i ^ j) * phi.at(i, j))
          throw PhiConditionError("cocycle", "cocycle identity fails at " + triple_str(i, j, l));
        if (phi.at(i, j ^ l) + phi.at(j, i ^ l) + phi.at(l, i ^ j) != id)
          throw PhiConditionError("sum", "sum identity fails at " + triple_str(i, j, l));
      }
}

PhiFamily phi_from_beta(const BetaMap& beta) {
  PhiFamily phi{beta.k_dim, beta.h_dim, {}};
  const BitMatrix id = BitMatrix::identity(beta.k_dim);
  const std::size_t hs = phi.h_size();
  for (std::uint64_t i = 0; i < hs; ++i)
    for (std::uint64_t j = 0; j < hs; ++j)
      phi.members.push_back(invert(id + beta.at(i ^ j)) * (id + beta.at(i)) * (id + beta.at(j)));
  return phi;
}

FiniteLoop nuclear_semidirect(const PhiFamily& phi) {
  if (phi.k_dim + phi.h_dim > kMaxLoopBits) throw Error(ErrorCode::kUnsupportedParams, "k_dim + h_dim exceeds 14");
  validate_phi_family(phi);
  const std::size_t k = phi.k_dim;
  const std::size_t hs = phi.h_size();
  const std::uint64_t k_mask = (std::uint64_t{1} << k) - 1;
  std::vector<std::vector<std::uint64_t>> act;
  for (const auto& m : phi.members) act.push_back(action_table(m));

  const std::size_t n = (std::size_t{1} << k) * hs;
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint64_t a = x & k_mask, i = x >> k;
    for (std::size_t y = 0; y < n; ++y) {
      const std::uint64_t b = y & k_mask, j = y >> k;
      table[x * n + y] = static_cast<Element>(act[i * hs + j][a ^ b] | ((i ^ j) << k));
    }
  }
  FiniteLoop q = FiniteLoop::from_table(n, std::move(table));

  const auto k_part = k_part_elements(k);
  const auto nucleus = middle_nucleus(q);
  if (!std::includes(nucleus.begin(), nucleus.end(), k_part.begin(), k_part.end()) || !is_normal(q, k_part))
    throw Error(ErrorCode::kInternal, "K is not a normal subloop inside the middle nucleus");
  return q;
}

// ----------------------------------------------------------------- center

std::vector<Element> PredictedCenter::elements() const {
  std::vector<Element> out;
  for (auto a : span_words(k_basis))
    for (auto i : h_part) out.push_back(static_cast<Element>(a | (i << k_dim)));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

BitMatrix stack(const std::vector<BitMatrix>& ms, std::size_t k) {
  BitMatrix out(k * ms.size(), k);
  for (std::size_t l = 0; l < ms.size(); ++l)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (ms[l].get(r, c)) out.set(l * k + r, c);
  return out;
}

}  // namespace

// (a, 0) is central in the semidirect product iff phi_{j,l}(a) = a for all
// j, l, i.e. beta(j) beta(l) a = 0; u fixes K pointwise.
PredictedCenter predicted_center(const BetaMap& beta) {
  PredictedCenter out;
  out.k_dim = beta.k_dim;
  std::vector<BitMatrix> products;
  for (std::size_t l = 0; l < beta.h_dim; ++l)
    for (std::size_t r = l; r < beta.h_dim; ++r) products.push_back(beta.matrices[l] * beta.matrices[r]);
  out.k_basis = kernel_basis(stack(products, beta.k_dim));
  out.k_kernel_basis = kernel_basis(stack(beta.matrices, beta.k_dim));
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << beta.h_dim); ++i) {
    const BitMatrix bi = beta.at(i);
    const bool annihilates =
        std::all_of(beta.matrices.begin(), beta.matrices.end(), [&](const BitMatrix& bj) { return (bi * bj).is_zero(); });
    if (annihilates) out.h_part.push_back(i);
  }
  return out;
}

void u_isomorphism_check(const BetaMap& beta) {
  validate_beta(beta);
  const PhiFamily phi = phi_from_beta(beta);
  validate_phi_family(phi);
  const FiniteLoop star = nuclear_semidirect(phi);
  const FiniteLoop product = build_beta_table(beta);

  const std::size_t k = beta.k_dim;
  const std::size_t n = beta.order();
  const std::uint64_t k_mask = (std::uint64_t{1} << k) - 1;
  const BitMatrix id = BitMatrix::identity(k);
  std::vector<std::vector<std::uint64_t>> shift;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << beta.h_dim); ++i) shift.push_back(action_table(id + beta.at(i)));
  std::vector<Element> u(n);
  std::vector<char> hit(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint64_t a = x & k_mask, i = x >> k;
    u[x] = static_cast<Element>(shift[i][a] | (i << k));
    if (hit[u[x]]++) throw Error(ErrorCode::kMismatch, "u is not injective at " + std::to_string(x));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
      if (u[star.mul(ex, ey)] != product.mul(u[x], u[y]))
        throw Error(ErrorCode::kMismatch, "u(x * y) != u(x) * u(y) at " + pair_str(x, y));
    }
}

// --------------------------------------------------------------- examples

BetaMap example1_beta(const FieldF2m& field, const BitMatrix& delta) {
  if (delta.rows() != field.degree())
    throw Error(ErrorCode::kInvalidArgument, "delta must have m rows");
  const std::size_t h = delta.cols();
  if (rank(delta) < h) throw Error(ErrorCode::kNotInjective, "delta is not injective");
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << h); ++i)
    if (delta.apply_word(i) == 1)
      throw Error(ErrorCode::kUnitInImage, "1 lies in the image of delta (at i = " + std::to_string(i) + ")");
  BetaMap beta{field.degree(), h, {}};
  for (std::size_t l = 0; l < h; ++l)
    beta.matrices.push_back(mul_endomorphism(field, static_cast<FieldElement>(delta.column(l).to_word())));
  return beta;
}

FiniteLoop example1_loop(const FieldF2m& field, const BitMatrix& delta) {
  FiniteLoop q = beta_loop(example1_beta(field, delta));
  if (delta.cols() > 0) require_centerless(q);
  return q;
}

Example2Data example2_data(unsigned m, unsigned d) {
  if (d == 0 || d >= m || m % d != 0)
    throw Error(ErrorCode::kBadSubfield,
                "GF(2^" + std::to_string(d) + ") is not a proper subfield of GF(2^" + std::to_string(m) + ")");
  FieldF2m field(m);
  auto subfield = subfield_elements(field, d);
  std::vector<FieldElement> h_basis;
  WordBasis span;
  for (auto e : subfield)
    if (span.insert(e)) h_basis.push_back(e);
  FieldElement sigma = 0;
  while (std::binary_search(subfield.begin(), subfield.end(), sigma)) ++sigma;

  std::vector<BitVector> cols;
  for (auto h : h_basis) cols.push_back(BitVector::from_word(m, field.mul(sigma, h)));
  BetaMap beta = example1_beta(field, BitMatrix::from_columns(m, cols));
  return Example2Data{field, std::move(subfield), std::move(h_basis), sigma, std::move(beta)};
}

FiniteLoop example2_loop(unsigned m, unsigned d) {
  const Example2Data data = example2_data(m, d);
  FiniteLoop q = beta_loop(data.beta);
  require_centerless(q);
  return q;
}

// ------------------------------------------------------------- X^2 = 0

HoraJedWitness hora_jed_witness(const std::vector<BitMatrix>& x_set,
                                const std::vector<std::vector<BitMatrix>>& m_basis) {
  if (x_set.empty() || std::all_of(x_set.begin(), x_set.end(), [](const BitMatrix& x) { return x.is_zero(); }))
    throw Error(ErrorCode::kDegenerateX, "X must contain a nonzero endomorphism");
  const std::size_t k = x_set.front().rows();
  for (const auto& x : x_set)
    if (x.rows() != k || x.cols() != k) throw Error(ErrorCode::kInvalidArgument, "X members must be k x k");
  for (std::size_t a = 0; a < x_set.size(); ++a)
    for (std::size_t b = 0; b < x_set.size(); ++b)
      if (!(x_set[a] * x_set[b]).is_zero())
        throw Error(ErrorCode::kXSquareNonzero, "X^2 != 0: product of members " + pair_str(a, b) + " is nonzero");

  const std::size_t h = m_basis.size();
  std::vector<BitVector> flat_x;
  for (const auto& x : x_set) flat_x.push_back(flatten(x));
  const std::size_t span_rank = span_basis(flat_x).size();
  for (std::size_t l = 0; l < h; ++l) {
    if (m_basis[l].size() != h) throw Error(ErrorCode::kInvalidArgument, "m table must be h_dim x h_dim");
    for (std::size_t r = 0; r < h; ++r) {
      if (m_basis[l][r] != m_basis[r][l]) throw Error(ErrorCode::kInvalidArgument, "m is not symmetric");
      if (m_basis[l][r].rows() != k || m_basis[l][r].cols() != k)
        throw Error(ErrorCode::kInvalidArgument, "m values must be k x k");
      auto with = flat_x;
      with.push_back(flatten(m_basis[l][r]));
      if (span_basis(with).size() != span_rank)
        throw Error(ErrorCode::kInvalidArgument, "m" + pair_str(l, r) + " is not in span(X)");
    }
  }

  PhiFamily phi{k, h, {}};
  const BitMatrix id = BitMatrix::identity(k);
  for (std::uint64_t i = 0; i < phi.h_size(); ++i)
    for (std::uint64_t j = 0; j < phi.h_size(); ++j) {
      BitMatrix member = id;
      for (std::size_t l = 0; l < h; ++l)
        for (std::size_t r = 0; r < h; ++r)
          if (((i >> l) & 1u) && ((j >> r) & 1u)) member += m_basis[l][r];
      phi.members.push_back(std::move(member));
    }
  validate_phi_family(phi);
  FiniteLoop q = nuclear_semidirect(phi);

  BitMatrix stacked(k * x_set.size(), k);
  for (std::size_t l = 0; l < x_set.size(); ++l)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (x_set[l].get(r, c)) stacked.set(l * k + r, c);
  const auto fixed = span_words(kernel_basis(stacked));
  if (fixed.size() < 2) throw Error(ErrorCode::kInternal, "X has no common nonzero fixed vector");
  const std::uint64_t a = fixed[1];

  const auto center = nuclei_and_center(q).center;
  if (!std::binary_search(center.begin(), center.end(), static_cast<Element>(a)))
    throw Error(ErrorCode::kInternal, "fixed vector is not central");
  return HoraJedWitness{std::move(phi), std::move(q), a, static_cast<Element>(a)};
}

HoraJedInput random_hora_jed_input(std::size_t k_dim, std::size_t h_dim, std::uint64_t seed) {
  if (k_dim < 2 || k_dim > 12 || h_dim > 4)
    throw Error(ErrorCode::kInvalidArgument, "random X needs 2 <= k_dim <= 12 and h_dim <= 4");
  std::mt19937_64 rng(seed);
  const std::size_t k = k_dim;

  BitMatrix p;
  for (;;) {
    p = BitMatrix(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (rng() & 1u) p.set(r, c);
    if (rank(p) == k) break;
  }
  const BitMatrix p_inv = invert(p);

  // Nonzero entries only in rows < split and columns >= split.
  const std::size_t split = 1 + rng() % (k / 2);
  HoraJedInput in;
  const std::size_t members = 1 + rng() % 3;
  while (in.x_set.size() < members) {
    BitMatrix block(k, k);
    for (std::size_t r = 0; r < split; ++r)
      for (std::size_t c = split; c < k; ++c)
        if (rng() & 1u) block.set(r, c);
    if (block.is_zero()) continue;
    in.x_set.push_back(p * block * p_inv);
  }

  in.m_basis.assign(h_dim, std::vector<BitMatrix>(h_dim, BitMatrix(k, k)));
  for (std::size_t l = 0; l < h_dim; ++l)
    for (std::size_t r = l; r < h_dim; ++r) {
      BitMatrix value(k, k);
      for (const auto& x : in.x_set)
        if (rng() & 1u) value += x;
      in.m_basis[l][r] = value;
      in.m_basis[r][l] = value;
    }
  return in;
}

}  // namespace aloop
