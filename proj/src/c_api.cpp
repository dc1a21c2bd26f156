#include "aloop.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "aloop/constructions.hpp"
#include "aloop/error.hpp"
#include "aloop/formats.hpp"
#include "aloop/lie.hpp"
#include "aloop/loop.hpp"
#include "aloop/survey.hpp"

struct aloop_lie {
  aloop::LieAlgebraF2 algebra;
};

struct aloop_loop {
  aloop::FiniteLoop loop;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_kind;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

aloop_status status_for(aloop::ErrorCode code) {
  using aloop::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return ALOOP_E_INVALID_ARGUMENT;
    case ErrorCode::kParse: return ALOOP_E_PARSE;
    case ErrorCode::kJacobi: return ALOOP_E_JACOBI;
    case ErrorCode::kW1Violation: return ALOOP_E_W1;
    case ErrorCode::kLoopAxiom:
    case ErrorCode::kNotASubloop: return ALOOP_E_LOOP_AXIOM;
    case ErrorCode::kUnsupportedParams: return ALOOP_E_UNSUPPORTED;
    case ErrorCode::kSizeLimit:
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kDimTooLarge: return ALOOP_E_LIMIT;
    case ErrorCode::kSingular:
    case ErrorCode::kNonDivisor:
    case ErrorCode::kPhiCondition:
    case ErrorCode::kNonCommutingBeta:
    case ErrorCode::kSingularIdPlusBeta:
    case ErrorCode::kNotInjective:
    case ErrorCode::kUnitInImage:
    case ErrorCode::kBadSubfield:
    case ErrorCode::kXSquareNonzero:
    case ErrorCode::kDegenerateX: return ALOOP_E_CONSTRUCTION;
    case ErrorCode::kMismatch:
    case ErrorCode::kInternal: return ALOOP_E_INTERNAL;
  }
  return ALOOP_E_INTERNAL;
}

template <class Fn>
aloop_status guarded(Fn&& fn) {
  g_error.clear();
  g_kind.clear();
  try {
    fn();
    return ALOOP_OK;
  } catch (const aloop::Error& e) {
    g_error = e.what();
    g_kind = aloop::error_code_name(e.code());
    return status_for(e.code());
  } catch (const IoError& e) {
    g_error = e.what();
    g_kind = "IoError";
    return ALOOP_E_IO;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    g_kind = "SizeLimit";
    return ALOOP_E_LIMIT;
  } catch (const std::exception& e) {
    g_error = e.what();
    g_kind = "Internal";
    return ALOOP_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw aloop::Error(aloop::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

aloop::ScanMode mode_for(std::uint64_t samples, std::uint64_t seed) {
  return samples == 0 ? aloop::ScanMode::Exhaustive() : aloop::ScanMode::Sampled(samples, seed);
}

aloop::ScanOptions options_for(std::size_t jobs, std::size_t budget_order) {
  aloop::ScanOptions o;
  o.jobs = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
  if (budget_order) o.budget_order = budget_order;
  return o;
}

}  // namespace

extern "C" {

const char* aloop_last_error(void) { return g_error.c_str(); }
const char* aloop_last_error_kind(void) { return g_kind.c_str(); }
void aloop_string_free(char* s) { std::free(s); }

aloop_status aloop_lie_parse(const char* text, aloop_lie** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new aloop_lie{aloop::parse_lief2(text)};
  });
}

aloop_status aloop_lie_read(const char* path, aloop_lie** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new aloop_lie{aloop::parse_lief2(read_file(path))};
  });
}

aloop_status aloop_lie_make(const char* kind, size_t dim, size_t gens, size_t nil_class, aloop_lie** out) {
  return guarded([&] {
    require(kind && out, "null argument");
    const std::string k = kind;
    if (k == "abelian")
      *out = new aloop_lie{aloop::make_abelian(dim)};
    else if (k == "heisenberg")
      *out = new aloop_lie{aloop::make_heisenberg()};
    else if (k == "free")
      *out = new aloop_lie{aloop::make_free_nilpotent(gens, nil_class).algebra};
    else
      throw aloop::Error(aloop::ErrorCode::kInvalidArgument, "unknown algebra kind: " + k);
  });
}

void aloop_lie_free(aloop_lie* l) { delete l; }
size_t aloop_lie_dim(const aloop_lie* l) { return l ? l->algebra.dim() : 0; }

aloop_status aloop_lie_validate(const aloop_lie* l) {
  return guarded([&] {
    require(l, "null argument");
    aloop::validate(l->algebra);
  });
}

aloop_status aloop_lie_props_json(const aloop_lie* l, size_t budget_order, char** out) {
  return guarded([&] {
    require(l && out, "null argument");
    aloop::validate(l->algebra);
    *out = dup_string(aloop::lie_props_json(l->algebra, budget_order ? budget_order : aloop::kDefaultBudgetOrder));
  });
}

aloop_status aloop_lie_to_text(const aloop_lie* l, char** out) {
  return guarded([&] {
    require(l && out, "null argument");
    *out = dup_string(aloop::serialize_lief2(l->algebra) + "\n");
  });
}

aloop_status aloop_lie_to_loop(const aloop_lie* l, aloop_loop** out) {
  return guarded([&] {
    require(l && out, "null argument");
    aloop::validate(l->algebra);
    *out = new aloop_loop{aloop::lie_to_loop(l->algebra)};
  });
}

aloop_status aloop_loop_parse(const char* text, aloop_loop** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new aloop_loop{aloop::parse_cayley(text)};
  });
}

aloop_status aloop_loop_read(const char* path, aloop_loop** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new aloop_loop{aloop::parse_cayley(read_file(path))};
  });
}

void aloop_loop_free(aloop_loop* q) { delete q; }
size_t aloop_loop_order(const aloop_loop* q) { return q ? q->loop.order() : 0; }

uint16_t aloop_loop_mul(const aloop_loop* q, uint16_t a, uint16_t b) {
  if (!q || a >= q->loop.order() || b >= q->loop.order()) return 0;
  return q->loop.mul(a, b);
}

aloop_status aloop_loop_to_text(const aloop_loop* q, char** out) {
  return guarded([&] {
    require(q && out, "null argument");
    *out = dup_string(aloop::serialize_cayley(q->loop));
  });
}

aloop_status aloop_loop_analyze_json(const aloop_loop* q, int with_split, int* automorphic, char** out) {
  return guarded([&] {
    require(q && out, "null argument");
    const aloop::LoopReport report = aloop::analyze(q->loop, with_split != 0);
    if (automorphic) *automorphic = report.automorphic ? 1 : 0;
    *out = dup_string(aloop::loop_report_json(report) + "\n");
  });
}

aloop_status aloop_loop_split_json(const aloop_loop* q, int* found, char** out) {
  return guarded([&] {
    require(q && out, "null argument");
    const aloop::SplitResult split = aloop::nuclear_split(q->loop);
    if (found) *found = split.witness ? 1 : 0;
    *out = dup_string(aloop::split_json(split) + "\n");
  });
}

aloop_status aloop_construct_beta(const char* beta_json, aloop_loop** out) {
  return guarded([&] {
    require(beta_json && out, "null argument");
    *out = new aloop_loop{aloop::beta_loop(aloop::parse_beta(beta_json))};
  });
}

aloop_status aloop_construct_example1(unsigned m, const uint32_t* delta, size_t h_dim, aloop_loop** out) {
  return guarded([&] {
    require(out && (delta || h_dim == 0), "null argument");
    const aloop::FieldF2m field(m);
    aloop::BitMatrix d(m, h_dim);
    for (std::size_t c = 0; c < h_dim; ++c) {
      require(delta[c] < field.size(), "delta value outside the field");
      for (unsigned r = 0; r < m; ++r)
        if ((delta[c] >> r) & 1u) d.set(r, c);
    }
    *out = new aloop_loop{aloop::example1_loop(field, d)};
  });
}

aloop_status aloop_construct_example2(unsigned m, unsigned d, aloop_loop** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new aloop_loop{aloop::example2_loop(m, d)};
  });
}

aloop_status aloop_construct_horajed(const char* input_json, size_t k_dim, size_t h_dim, uint64_t seed,
                                     aloop_loop** out, char** report_json) {
  return guarded([&] {
    require(out, "null argument");
    const aloop::HoraJedInput in =
        input_json ? aloop::parse_horajed(input_json) : aloop::random_hora_jed_input(k_dim, h_dim, seed);
    aloop::HoraJedWitness w = aloop::hora_jed_witness(in.x_set, in.m_basis);
    if (report_json) {
      const auto center = aloop::nuclei_and_center(w.loop).center;
      nlohmann::json doc = {{"order", w.loop.order()},
                            {"fixed_vector", w.fixed_vector},
                            {"central_element", w.central},
                            {"center", std::vector<int>(center.begin(), center.end())},
                            {"input", nlohmann::json::parse(aloop::serialize_horajed(in))}};
      *report_json = dup_string(doc.dump(2) + "\n");
    }
    *out = new aloop_loop{std::move(w.loop)};
  });
}

aloop_status aloop_scan_problem1_json(size_t dim, uint64_t samples, uint64_t seed, size_t jobs,
                                      size_t budget_order, size_t* found, char** out) {
  return guarded([&] {
    require(out, "null argument");
    const aloop::ScanReport r = aloop::scan_problem1(dim, mode_for(samples, seed), options_for(jobs, budget_order));
    if (found) *found = r.counterexamples.size();
    *out = dup_string(aloop::scan_report_json(r) + "\n");
  });
}

aloop_status aloop_scan_nonsplit_json(size_t dim, uint64_t samples, uint64_t seed, size_t jobs, size_t* found,
                                      char** out) {
  return guarded([&] {
    require(out, "null argument");
    const aloop::NonsplitReport r = aloop::scan_nonsplit(dim, mode_for(samples, seed), options_for(jobs, 0));
    if (found) *found = r.witnesses.size();
    *out = dup_string(aloop::nonsplit_report_json(r) + "\n");
  });
}

}  // extern "C"
