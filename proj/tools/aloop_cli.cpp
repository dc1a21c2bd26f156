// aloop: command-line front end over the C API.
//
// Exit codes: 0 ok, 1 property violation / counterexample / witness found,
// 2 invalid input. Nothing is written to the output on exit 2.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aloop.h"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFound = 1;
constexpr int kInvalid = 2;

struct Failure {
  int code;
  std::string message;
};

void check(aloop_status s) {
  if (s == ALOOP_OK) return;
  std::string kind = aloop_last_error_kind();
  std::string msg = aloop_last_error();
  throw Failure{s == ALOOP_E_INTERNAL ? 3 : kInvalid, kind.empty() ? msg : kind + ": " + msg};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  aloop_string_free(s);
  return out;
}

using LiePtr = std::unique_ptr<aloop_lie, decltype(&aloop_lie_free)>;
using LoopPtr = std::unique_ptr<aloop_loop, decltype(&aloop_loop_free)>;

LiePtr read_lie(const std::string& path) {
  aloop_lie* l = nullptr;
  check(aloop_lie_read(path.c_str(), &l));
  return {l, aloop_lie_free};
}

LoopPtr read_loop(const std::string& path) {
  aloop_loop* q = nullptr;
  check(aloop_loop_read(path.c_str(), &q));
  return {q, aloop_loop_free};
}

std::string loop_text(const aloop_loop* q) {
  char* s = nullptr;
  check(aloop_loop_to_text(q, &s));
  return take(s);
}

std::string set_str(const json& v) {
  std::string out = "{";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k].get<int>());
  return out + "}";
}

std::string yes_no(const json& v) { return v.get<bool>() ? "yes" : "no"; }

std::string analyze_summary(const json& r) {
  std::ostringstream out;
  out << "order        " << r["order"] << "\n"
      << "commutative  " << yes_no(r["commutative"]) << "\n"
      << "exponent2    " << yes_no(r["exponent2"]) << "\n"
      << "associative  " << yes_no(r["associative"]) << "\n"
      << "automorphic  " << yes_no(r["automorphic"]) << "\n"
      << "center       " << set_str(r["center"]) << "\n"
      << "N_lambda     " << set_str(r["nucleus_left"]) << "\n"
      << "N_mu         " << set_str(r["nucleus_middle"]) << "\n"
      << "N_rho        " << set_str(r["nucleus_right"]) << "\n";
  if (r.contains("split_certificate")) {
    if (r["split"].is_null())
      out << "split        none\n";
    else
      out << "split        K=" << set_str(r["split"]["K"]) << " H=" << set_str(r["split"]["H"]) << "\n";
  }
  return out.str();
}

// "5" or "3..5".
std::vector<std::size_t> parse_dims(const std::string& arg) {
  auto num = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Failure{kInvalid, "bad --dim value: " + arg};
    return static_cast<std::size_t>(std::stoul(s));
  };
  const auto dots = arg.find("..");
  if (dots == std::string::npos) return {num(arg)};
  const std::size_t lo = num(arg.substr(0, dots)), hi = num(arg.substr(dots + 2));
  if (lo > hi) throw Failure{kInvalid, "empty --dim range: " + arg};
  std::vector<std::size_t> out;
  for (std::size_t d = lo; d <= hi; ++d) out.push_back(d);
  return out;
}

struct Options {
  std::string input;
  std::string output;
  bool json = false;
  std::string dim = "";
  std::size_t gens = 2;
  std::size_t nil_class = 2;
  unsigned m = 0;
  unsigned d = 0;
  std::vector<std::uint32_t> delta;
  std::size_t k_dim = 4;
  std::size_t h_dim = 2;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
  std::size_t budget_order = 0;
  bool exhaustive = false;
  bool no_split = false;
  std::string kind;
};

// Output produced by a command; written only once the command has succeeded.
struct Result {
  int code = kOk;
  std::string text;
};

Result run_lie(const std::string& cmd, const Options& o) {
  if (cmd == "make") {
    aloop_lie* raw = nullptr;
    std::size_t dim = 0;
    if (!o.dim.empty()) dim = parse_dims(o.dim).front();
    check(aloop_lie_make(o.kind.c_str(), dim, o.gens, o.nil_class, &raw));
    LiePtr l(raw, aloop_lie_free);
    char* s = nullptr;
    check(aloop_lie_to_text(l.get(), &s));
    return {kOk, take(s)};
  }
  LiePtr l = read_lie(o.input);
  if (cmd == "validate") {
    check(aloop_lie_validate(l.get()));
    return {kOk, "ok: Jacobi holds (dim " + std::to_string(aloop_lie_dim(l.get())) + ")\n"};
  }
  if (cmd == "props") {
    char* s = nullptr;
    check(aloop_lie_props_json(l.get(), o.budget_order, &s));
    const std::string text = take(s);
    const json r = json::parse(text);
    const bool violation = r["verdict"].is_string() && r["verdict"] != "consistent";
    if (o.json) return {violation ? kFound : kOk, text + "\n"};
    std::ostringstream out;
    for (const char* key : {"dim", "nilpotent", "lower_central_dims", "derived_dims", "w1", "w2", "w2plus", "w2minus", "verdict"})
      out << key << std::string(20 - std::string(key).size(), ' ') << r[key].dump() << "\n";
    return {violation ? kFound : kOk, out.str()};
  }
  // to-loop
  aloop_loop* raw = nullptr;
  check(aloop_lie_to_loop(l.get(), &raw));
  LoopPtr q(raw, aloop_loop_free);
  return {kOk, loop_text(q.get())};
}

Result run_loop(const std::string& cmd, const Options& o) {
  LoopPtr q = read_loop(o.input);
  char* s = nullptr;
  if (cmd == "analyze") {
    int automorphic = 0;
    check(aloop_loop_analyze_json(q.get(), o.no_split ? 0 : 1, &automorphic, &s));
    const std::string text = take(s);
    return {automorphic ? kOk : kFound, o.json ? text : analyze_summary(json::parse(text))};
  }
  int found = 0;
  check(aloop_loop_split_json(q.get(), &found, &s));
  const std::string text = take(s);
  if (o.json) return {kOk, text};
  const json r = json::parse(text);
  std::ostringstream out;
  if (r["split"].is_null())
    out << "no nuclear splitting";
  else
    out << "K=" << set_str(r["split"]["K"]) << " H=" << set_str(r["split"]["H"]);
  out << " (" << r["split_certificate"]["k_candidates"] << " K candidates, " << r["split_certificate"]["h_candidates"]
      << " H candidates)\n";
  return {kOk, out.str()};
}

Result loop_output(const aloop_loop* q, const Options& o, const std::string& extra_json) {
  if (!o.json) return {kOk, loop_text(q)};
  char* s = nullptr;
  int automorphic = 0;
  check(aloop_loop_analyze_json(q, o.no_split ? 0 : 1, &automorphic, &s));
  json r = json::parse(take(s));
  if (!extra_json.empty()) r["construction"] = json::parse(extra_json);
  return {kOk, r.dump(2) + "\n"};
}

Result run_construct(const std::string& cmd, const Options& o) {
  aloop_loop* raw = nullptr;
  std::string extra;
  if (cmd == "beta") {
    std::ifstream in(o.input);
    if (!in) throw Failure{kInvalid, "cannot open " + o.input};
    std::stringstream ss;
    ss << in.rdbuf();
    check(aloop_construct_beta(ss.str().c_str(), &raw));
  } else if (cmd == "example1") {
    check(aloop_construct_example1(o.m, o.delta.data(), o.delta.size(), &raw));
  } else if (cmd == "example2") {
    check(aloop_construct_example2(o.m, o.d, &raw));
  } else {
    std::string text;
    if (!o.input.empty()) {
      std::ifstream in(o.input);
      if (!in) throw Failure{kInvalid, "cannot open " + o.input};
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    char* report = nullptr;
    check(aloop_construct_horajed(o.input.empty() ? nullptr : text.c_str(), o.k_dim, o.h_dim, o.seed, &raw, &report));
    extra = take(report);
  }
  LoopPtr q(raw, aloop_loop_free);
  return loop_output(q.get(), o, extra);
}

Result run_scan(const std::string& cmd, const Options& o) {
  if (o.dim.empty()) throw Failure{kInvalid, "--dim is required"};
  if (o.exhaustive == (o.samples != 0)) throw Failure{kInvalid, "choose exactly one of --exhaustive and --samples N"};
  json reports = json::array();
  std::ostringstream summary;
  std::size_t total = 0;
  for (std::size_t dim : parse_dims(o.dim)) {
    char* s = nullptr;
    std::size_t found = 0;
    if (cmd == "problem1")
      check(aloop_scan_problem1_json(dim, o.samples, o.seed, o.jobs, o.budget_order, &found, &s));
    else
      check(aloop_scan_nonsplit_json(dim, o.samples, o.seed, o.jobs, &found, &s));
    json r = json::parse(take(s));
    total += found;
    summary << "dim " << dim << ": " << r["candidates"] << " candidates, " << r["jacobi_passed"] << " pass Jacobi, ";
    if (cmd == "problem1")
      summary << r["consistent"] << " consistent, " << found << " counterexamples, " << r["skipped_budget"]
              << " skipped by budget\n";
    else
      summary << r["automorphic"] << " automorphic, " << r["nucleus_index4"] << " with |Q:N_mu| = 4, " << found
              << " nonsplit witnesses\n";
    reports.push_back(std::move(r));
  }
  const int code = total ? kFound : kOk;
  if (!o.json) return {code, summary.str()};
  return {code, (reports.size() == 1 ? reports[0] : reports).dump(2) + "\n"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aloop: Lie algebras over F2, loops x + y + [x,y] and nuclear semidirect products"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* c, bool input_required) {
    auto* in = c->add_option("input", o.input, "Input file");
    if (input_required) in->required();
    c->add_option("-o,--output", o.output, "Write the result to this file instead of stdout");
    c->add_flag("--json", o.json, "JSON output");
  };

  auto* lie = app.add_subcommand("lie", "Lie algebras over F2 (lief2-v1)");
  lie->require_subcommand(1);
  add_io(lie->add_subcommand("validate", "Check the Jacobi identity"), true);
  auto* props = lie->add_subcommand("props", "Series, W1, W2, W2+, W2-");
  add_io(props, true);
  props->add_option("--budget-order", o.budget_order, "Largest loop order built for W2-");
  add_io(lie->add_subcommand("to-loop", "Cayley table of x + y + [x,y]"), true);
  auto* make = lie->add_subcommand("make", "Built-in algebras");
  make->add_option("kind", o.kind, "abelian | heisenberg | free")->required()->check(CLI::IsMember({"abelian", "heisenberg", "free"}));
  make->add_option("--dim", o.dim, "Dimension (abelian)");
  make->add_option("--gens", o.gens, "Generators (free)");
  make->add_option("--class", o.nil_class, "Nilpotency class (free)");
  make->add_option("-o,--output", o.output, "Output file");

  auto* loop = app.add_subcommand("loop", "Finite loops (cayley-v1)");
  loop->require_subcommand(1);
  auto* analyze = loop->add_subcommand("analyze", "Flags, nuclei, center, automorphic test, nuclear split");
  add_io(analyze, true);
  analyze->add_flag("--no-split", o.no_split, "Skip the nuclear split search");
  add_io(loop->add_subcommand("split", "Nuclear split search"), true);

  auto* construct = app.add_subcommand("construct", "Build loops");
  construct->require_subcommand(1);
  add_io(construct->add_subcommand("beta", "beta-construction from a beta-v1 file"), true);
  auto* ex1 = construct->add_subcommand("example1", "K = GF(2^m), beta(i) = multiplication by delta(i)");
  add_io(ex1, false);
  ex1->add_option("--m", o.m, "Field degree")->required();
  ex1->add_option("--delta", o.delta, "Images of the H basis as field elements")->required()->delimiter(',');
  auto* ex2 = construct->add_subcommand("example2", "K = GF(2^m), H = GF(2^d)");
  add_io(ex2, false);
  ex2->add_option("--m", o.m, "Field degree")->required();
  ex2->add_option("--d", o.d, "Subfield degree")->required();
  auto* hj = construct->add_subcommand("horajed", "phi = id + m(i,j) with values in X, X^2 = 0 (horajed-v1 or seeded)");
  add_io(hj, false);
  hj->add_option("--k-dim", o.k_dim, "dim K for the seeded input");
  hj->add_option("--h-dim", o.h_dim, "dim H for the seeded input");
  hj->add_option("--seed", o.seed, "Seed");
  for (auto* c : {ex1, ex2, hj}) c->add_flag("--no-split", o.no_split, "Skip the split search in --json output");
  construct->get_subcommand("beta")->add_flag("--no-split", o.no_split, "Skip the split search in --json output");

  auto* scan = app.add_subcommand("scan", "Searches over flag-adapted nilpotent algebras");
  scan->require_subcommand(1);
  for (const char* name : {"problem1", "nonsplit"}) {
    auto* c = scan->add_subcommand(name, name == std::string("problem1") ? "W2 / W2+ / W2- classification"
                                                                         : "Nonsplit loops with |Q:N_mu| = 4");
    c->add_option("--dim", o.dim, "Dimension or range a..b")->required();
    c->add_flag("--exhaustive", o.exhaustive, "Every flag-adapted pattern");
    c->add_option("--samples", o.samples, "Number of seeded draws");
    c->add_option("--seed", o.seed, "Seed for --samples");
    c->add_option("--jobs", o.jobs, "Worker threads (default: all cores)");
    if (name == std::string("problem1")) c->add_option("--budget-order", o.budget_order, "Largest loop order built");
    c->add_option("-o,--output", o.output, "Output file");
    c->add_flag("--json", o.json, "JSON output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  Result result;
  try {
    auto* group = app.get_subcommands().front();
    auto* leaf = group->get_subcommands().front();
    const std::string g = group->get_name(), c = leaf->get_name();
    if (g == "lie")
      result = run_lie(c, o);
    else if (g == "loop")
      result = run_loop(c, o);
    else if (g == "construct")
      result = run_construct(c, o);
    else
      result = run_scan(c, o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (o.output.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out || !(out << result.text)) {
      std::cerr << "error: cannot write " << o.output << "\n";
      return kInvalid;
    }
  }
  return result.code;
}
