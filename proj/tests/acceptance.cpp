// One PASS/FAIL line per acceptance criterion. Usage: acceptance <path-to-aloop-cli>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <unistd.h>

#include "aloop/constructions.hpp"
#include "aloop/error.hpp"
#include "aloop/formats.hpp"
#include "aloop/survey.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace aloop;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_tmp;

struct Run {
  int exit_code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  Run r;
  const std::string cmd = "'" + g_cli + "' " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string& name) { return (g_tmp / name).string(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int g_failed = 0;

void criterion(int n, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= limit_s) o.require(false, "runtime over limit");
  if (!o.pass) ++g_failed;
  std::printf("%s criterion %d (%s): %s [%.2f s, limit %.0f s]\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), s,
              limit_s);
  std::fflush(stdout);
}

// commutative, exponent 2, automorphic, nonassociative, center {0}
void check_profile(Outcome& o, const json& rep, const std::string& label) {
  o.require(rep["commutative"] == true, label + " not commutative");
  o.require(rep["exponent2"] == true, label + " not exponent 2");
  o.require(rep["automorphic"] == true, label + " not automorphic");
  o.require(rep["associative"] == false, label + " associative");
  o.require(rep["center"] == json::array({0}), label + " center not {0}");
}

json analyze_file(Outcome& o, const std::string& file, bool split) {
  const Run r = cli("loop analyze --json " + std::string(split ? "" : "--no-split ") + "'" + file + "'");
  o.require(r.exit_code == 0, "loop analyze exit " + std::to_string(r.exit_code));
  return json::parse(r.out);
}

std::vector<BetaMap> seeded_betas() {
  std::mt19937_64 rng(2024);
  std::vector<BetaMap> out;
  for (int t = 0; t < 100; ++t) out.push_back(gen::random_beta(rng, 1 + rng() % 4, 1 + rng() % 3, rng() % 3 == 0));
  return out;
}

std::vector<Element> literal_center(const PredictedCenter& pc) {
  PredictedCenter lit = pc;
  lit.k_basis = pc.k_kernel_basis;
  return lit.elements();
}

LieAlgebraF2 table_from_pattern(std::size_t n, std::uint64_t pattern) {
  LieAlgebraF2 l(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k) l.set_basis_bracket(i, j, (pattern >> (n * k)) & ((1u << n) - 1));
  return l;
}

std::vector<LieAlgebraF2> flag_stream(std::size_t max_dim) {
  std::vector<LieAlgebraF2> out;
  for (std::size_t n = 2; n <= max_dim; ++n)
    for (auto& l : enumerate_flag_nilpotent(n)) out.push_back(std::move(l));
  return out;
}

std::vector<LieAlgebraF2> catalog() {
  std::vector<LieAlgebraF2> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back(make_abelian(n));
  out.push_back(make_heisenberg());
  for (auto [g, c] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}}) out.push_back(make_free_nilpotent(g, c).algebra);
  return out;
}

oracle::Table cyclic(int n) {
  oracle::Table t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return t;
}

// rotations 0..n-1, reflections n..2n-1
oracle::Table dihedral(int n) {
  oracle::Table t(2 * n, std::vector<int>(2 * n));
  for (int x = 0; x < 2 * n; ++x)
    for (int y = 0; y < 2 * n; ++y) {
      const int rx = x % n, ry = y % n;
      const bool fx = x >= n, fy = y >= n;
      const int r = fx ? (rx - ry + n) % n : (rx + ry) % n;
      t[x][y] = r + ((fx != fy) ? n : 0);
    }
  return t;
}

const oracle::Table kT5 = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0}, {4, 2, 0, 1, 3}};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <aloop cli>\n");
    return 2;
  }
  g_cli = argv[1];
  g_tmp = fs::temp_directory_path() / ("aloop_acceptance_" + std::to_string(getpid()));
  fs::create_directories(g_tmp);

  criterion(1, "example 2 at order 8", 1, [] {
    Outcome o;
    const Run c = cli("construct example2 --m 2 --d 1 -o '" + tmp("ex2.cayley") + "'");
    o.require(c.exit_code == 0, "construct exit " + std::to_string(c.exit_code));
    const json rep = analyze_file(o, tmp("ex2.cayley"), true);
    check_profile(o, rep, "Q");
    o.require(rep["order"] == 8, "order");
    o.require(rep["nucleus_middle"] == json::array({0, 1, 2, 3}), "N_mu is not the K-part");
    o.require(rep["split"].is_object() && rep["split"]["K"] == json::array({0, 1, 2, 3}) &&
                  rep["split"]["H"].size() == 2,
              "no K/H split witness");
    if (o.pass) o.detail = "profile ok, |N_mu| = 4, split K = {0,1,2,3}, H = " + rep["split"]["H"].dump();
    return o;
  });

  criterion(2, "example 2 at order 64, example 1 in GF(16)", 20, [] {
    Outcome o;
    std::vector<double> times;
    auto timed = [&](const std::string& construct, const std::string& label) {
      const auto t0 = std::chrono::steady_clock::now();
      const Run c = cli("construct " + construct + " -o '" + tmp(label) + "'");
      o.require(c.exit_code == 0, label + " construct exit " + std::to_string(c.exit_code));
      const json rep = analyze_file(o, tmp(label), false);
      check_profile(o, rep, label);
      o.require(rep["order"] == 64, label + " order");
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      o.require(times.back() < 5, label + " over 5 s");
    };
    timed("example2 --m 4 --d 2", "ex2_4_2");
    std::mt19937_64 rng(16);
    std::string deltas;
    for (int found = 0; found < 3;) {
      const std::uint32_t a = rng() % 16, b = rng() % 16;
      if (a == 0 || b == 0 || a == b || a == 1 || b == 1 || (a ^ b) == 1) continue;
      timed("example1 --m 4 --delta " + std::to_string(a) + " " + std::to_string(b), "ex1_" + std::to_string(found));
      deltas += (deltas.empty() ? "" : ", ") + std::string("(") + std::to_string(a) + "," + std::to_string(b) + ")";
      ++found;
    }
    double worst = 0;
    for (double t : times) worst = std::max(worst, t);
    if (o.pass) {
      std::ostringstream s;
      s << "4 loops of order 64, delta = " << deltas << ", slowest " << worst << " s";
      o.detail = s.str();
    }
    return o;
  });

  const std::vector<BetaMap> betas = seeded_betas();

  criterion(3, "u isomorphism and Phi validation", 60, [&] {
    Outcome o;
    int bad = 0;
    for (const auto& b : betas) {
      try {
        u_isomorphism_check(b);
        validate_phi_family(phi_from_beta(b));
      } catch (const Error&) {
        ++bad;
      }
    }
    o.require(bad == 0, std::to_string(bad) + " instances failed");
    if (o.pass) o.detail = "100 random beta, (k,h) <= (4,3), 0 mismatches";
    return o;
  });

  criterion(4, "center formula", 60, [&] {
    Outcome o;
    std::vector<BetaMap> cases = betas;
    const BetaMap shift{3, 1, {BitMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})}};
    cases.push_back(shift);
    int bad = 0, literal_bad = 0;
    for (const auto& b : cases) {
      const auto z = oracle::center(oracle::Loop(beta_loop(b).to_rows()));
      const PredictedCenter pc = predicted_center(b);
      bad += pc.elements() != z;
      literal_bad += literal_center(pc) != z;
    }
    const std::size_t partial = predicted_center(shift).elements().size();
    o.require(bad == 0, std::to_string(bad) + " of 101 differ from brute force");
    o.require(partial == 4, "partial-center case has |Z| = " + std::to_string(partial));
    if (o.pass)
      o.detail = "101 exact matches, nilpotent partial case |Z| = 4; the common-kernel form of part (a) misses " +
                 std::to_string(literal_bad) + " of 101";
    return o;
  });

  criterion(5, "middle nucleus = bracket annihilator", 120, [] {
    Outcome o;
    std::vector<LieAlgebraF2> algebras = flag_stream(5);
    for (auto& l : catalog()) algebras.push_back(std::move(l));
    int bad = 0;
    for (const auto& l : algebras) {
      const oracle::Loop q(lie_to_loop(l).to_rows());
      bad += oracle::middle_nucleus(q) != bracket_annihilator_of_derived(l);
    }
    o.require(bad == 0, std::to_string(bad) + " mismatches");
    if (o.pass) o.detail = std::to_string(algebras.size()) + " loops, exact equality";
    return o;
  });

  criterion(6, "problem 1 desk-scale slice", 1800, [] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Run small = cli("scan problem1 --dim 3..5 --exhaustive --json");
    const double t_small = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(small.exit_code == 0, "dims 3..5 exit " + std::to_string(small.exit_code));
    const json a = json::parse(small.out);
    o.require(a.size() == 3, "expected three reports");
    std::uint64_t counterexamples = 0;
    for (const auto& r : a) counterexamples += r["counterexamples"].size();
    o.require(a[0]["jacobi_passed"] == 2 && a[0]["candidates"] == 2, "dim 3 count");
    o.require(a[1]["jacobi_passed"] == 16 && a[1]["candidates"] == 16, "dim 4 count");
    o.require(a[2]["jacobi_passed"].get<std::uint64_t>() <= 1024, "dim 5 count");
    o.require(t_small < 120, "dims 3..5 over 2 min");
    const auto t1 = std::chrono::steady_clock::now();
    const Run big = cli("scan problem1 --dim 6 --exhaustive --json");
    const double t_big = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    o.require(big.exit_code == 0, "dim 6 exit " + std::to_string(big.exit_code));
    const json b = json::parse(big.out);
    counterexamples += b["counterexamples"].size();
    o.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
    if (o.pass) {
      std::ostringstream s;
      s << "0 counterexamples; dim 3/4/5 Jacobi-passed " << a[0]["jacobi_passed"] << "/" << a[1]["jacobi_passed"] << "/"
        << a[2]["jacobi_passed"] << " (" << t_small << " s); dim 6: " << b["candidates"] << " patterns, "
        << b["jacobi_passed"] << " Jacobi, W2 false on " << b["w2_false"] << " (" << t_big << " s)";
      o.detail = s.str();
    }
    return o;
  });

  criterion(7, "nonsplit witness at dim 5", 600, [] {
    Outcome o;
    const Run r = cli("scan nonsplit --dim 5 --exhaustive --json");
    o.require(r.exit_code == 1, "exit " + std::to_string(r.exit_code));
    const json rep = json::parse(r.out);
    const auto& ws = rep["witnesses"];
    o.require(!ws.empty(), "no witness");
    int confirmed = 0;
    for (const auto& w : ws) {
      const oracle::Loop q(lie_to_loop(parse_lief2(w["algebra"].dump())).to_rows());
      bool ok = oracle::commutative(q) && oracle::automorphic(q) && w["split"].is_null();
      for (int x = 0; x < q.n(); ++x) ok = ok && q.t[x][x] == 0;
      ok = ok && static_cast<std::size_t>(q.n()) == 4 * oracle::middle_nucleus(q).size();
      ok = ok && !oracle::splits_nuclearly(q);
      confirmed += ok;
    }
    o.require(confirmed == static_cast<int>(ws.size()), "oracle rejected " + std::to_string(ws.size() - confirmed));
    if (o.pass) o.detail = std::to_string(ws.size()) + " witnesses of order 32, all confirmed by the brute-force oracle";
    return o;
  });

  criterion(8, "direct = section-conjugation automorphic test", 600, [&] {
    Outcome o;
    std::vector<FiniteLoop> corpus;
    for (std::size_t n = 1; n <= 5; ++n)
      for (const auto& l : n == 1 ? std::vector<LieAlgebraF2>{make_abelian(1)} : enumerate_flag_nilpotent(n))
        corpus.push_back(lie_to_loop(l));
    for (const auto& l : catalog())
      if (l.dim() <= 7) corpus.push_back(lie_to_loop(l));
    corpus.push_back(example2_loop(2, 1));
    corpus.push_back(example2_loop(4, 2));
    for (const auto& b : betas) corpus.push_back(beta_loop(b));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const HoraJedInput in = random_hora_jed_input(2 + seed % 3, 1 + seed % 3, seed);
      corpus.push_back(hora_jed_witness(in.x_set, in.m_basis).loop);
    }
    corpus.push_back(FiniteLoop::from_rows(kT5));
    for (int n = 1; n <= 40; ++n) corpus.push_back(FiniteLoop::from_rows(cyclic(n)));
    for (int n = 3; n <= 16; ++n) corpus.push_back(FiniteLoop::from_rows(dihedral(n)));
    std::mt19937_64 rng(88);
    for (int t = 0; t < 400; ++t) corpus.push_back(FiniteLoop::from_rows(gen::random_loop_table(rng)));
    std::size_t agree = 0, yes = 0;
    for (const auto& q : corpus) {
      const bool d = is_automorphic(q, AutomorphicMethod::kDirect);
      agree += d == is_automorphic(q, AutomorphicMethod::kSectionConjugation);
      yes += d;
    }
    o.require(corpus.size() >= 1000, "corpus too small");
    o.require(agree == corpus.size(), std::to_string(corpus.size() - agree) + " disagreements");
    o.require(yes > 0 && yes < corpus.size(), "corpus is one-sided");
    if (o.pass)
      o.detail = std::to_string(corpus.size()) + " loops (" + std::to_string(yes) + " automorphic, " +
                 std::to_string(corpus.size() - yes) + " not), exact agreement";
    return o;
  });

  criterion(9, "negative control T5", 5, [] {
    Outcome o;
    {
      std::ofstream f(tmp("t5.cayley"));
      f << serialize_cayley(FiniteLoop::from_rows(kT5));
    }
    const Run r = cli("loop analyze --json '" + tmp("t5.cayley") + "'");
    o.require(r.exit_code == 1, "exit " + std::to_string(r.exit_code));
    o.require(json::parse(r.out)["automorphic"] == false, "reported automorphic");
    const FiniteLoop t5 = FiniteLoop::from_rows(kT5);
    o.require(!is_associative(t5), "associative");
    // L_{1,2} = [0 1 3 2 4] is an inner generator and not a homomorphism
    const Permutation l12(std::vector<Element>{0, 1, 3, 2, 4});
    const auto gens = inner_generators(t5);
    o.require(std::find(gens.begin(), gens.end(), l12) != gens.end(), "L_{1,2} not among the generators");
    o.require(l12(t5.mul(3, 3)) != t5.mul(l12(3), l12(3)), "L_{1,2} respects 3*3");
    std::size_t failing = 0;
    for (const auto& g : gens) {
      bool hom = true;
      for (Element x = 0; x < 5 && hom; ++x)
        for (Element y = 0; y < 5 && hom; ++y) hom = g(t5.mul(x, y)) == t5.mul(g(x), g(y));
      failing += !hom;
    }
    if (o.pass)
      o.detail = "valid, nonassociative, exit 1; " + std::to_string(failing) + " inner generators fail, e.g. L_{1,2}(3*3) = 3 but L_{1,2}(3)*L_{1,2}(3) = 4";
    return o;
  });

  criterion(10, "X^2 = 0 constructions", 120, [] {
    Outcome o;
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const HoraJedInput in = random_hora_jed_input(2 + seed % 4, 1 + seed % 3, seed);
      bool ok = std::any_of(in.x_set.begin(), in.x_set.end(), [](const BitMatrix& x) { return !x.is_zero(); });
      for (const auto& x : in.x_set)
        for (const auto& y : in.x_set) ok = ok && (x * y).is_zero();
      const HoraJedWitness w = hora_jed_witness(in.x_set, in.m_basis);
      validate_phi_family(w.phi);
      const auto z = oracle::center(oracle::Loop(w.loop.to_rows()));
      ok = ok && w.fixed_vector != 0 && w.central == w.fixed_vector && z.size() > 1 &&
           std::find(z.begin(), z.end(), w.central) != z.end();
      bad += !ok;
    }
    o.require(bad == 0, std::to_string(bad) + " of 50 failed");
    if (o.pass) o.detail = "50 seeded inputs, Phi valid, |Z| > 1 with the fixed vector central";
    return o;
  });

  criterion(11, "W2 and W2+ certification", 600, [] {
    Outcome o;
    std::size_t checked = 0, w2_bad = 0;
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << (n * n * (n - 1) / 2)); ++p) {
        const LieAlgebraF2 l = table_from_pattern(n, p);
        if (!satisfies_jacobi(l)) continue;
        ++checked;
        w2_bad += check_w2(l) != oracle::w2_all_elements(l);
      }
    std::vector<LieAlgebraF2> seen = flag_stream(6);
    for (auto& l : catalog()) seen.push_back(std::move(l));
    std::size_t plus_bad = 0;
    for (const auto& l : seen)
      plus_bad += check_w2plus(l, W2PlusMethod::kDirect) != check_w2plus(l, W2PlusMethod::kDerivedSeries);
    o.require(w2_bad == 0, std::to_string(w2_bad) + " W2 mismatches");
    o.require(plus_bad == 0, std::to_string(plus_bad) + " W2+ mismatches");
    if (o.pass)
      o.detail = "W2 exact on all " + std::to_string(checked) + " algebras of dim <= 4; W2+ methods agree on " +
                 std::to_string(seen.size()) + " algebras";
    return o;
  });

  fs::remove_all(g_tmp);
  std::printf("%d of 11 criteria failed\n", g_failed);
  return g_failed ? 1 : 0;
}
