#include "aloop/formats.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aloop/error.hpp"

namespace aloop {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what, e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path, "missing field \"" + key + "\"");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::size_t as_index(const json& v, const std::string& path, std::size_t bound) {
  const std::int64_t x = as_int(v, path);
  if (x < 0 || static_cast<std::uint64_t>(x) >= bound)
    throw ParseError(path, "index " + std::to_string(x) + " out of range [0, " + std::to_string(bound) + ")");
  return static_cast<std::size_t>(x);
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  return v;
}

void expect_format(const json& doc, const std::string& format) {
  const json& f = field(doc, "format", "$");
  if (!f.is_string() || f.get<std::string>() != format)
    throw ParseError("$.format", "expected \"" + format + "\"");
}

BitMatrix parse_matrix(const json& v, std::size_t n, const std::string& path) {
  as_array(v, path);
  if (v.size() != n) throw ParseError(path, "expected " + std::to_string(n) + " rows");
  BitMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    as_array(v[r], rp);
    if (v[r].size() != n) throw ParseError(rp, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      const std::int64_t bit = as_int(v[r][c], rp + "[" + std::to_string(c) + "]");
      if (bit != 0 && bit != 1) throw ParseError(rp + "[" + std::to_string(c) + "]", "expected 0 or 1");
      if (bit) m.set(r, c);
    }
  }
  return m;
}

json matrix_json(const BitMatrix& m) { return m.to_rows(); }

std::size_t parse_dim(const json& doc, const std::string& key, std::size_t max) {
  const std::int64_t d = as_int(field(doc, key, "$"), "$." + key);
  if (d < 0 || static_cast<std::uint64_t>(d) > max)
    throw ParseError("$." + key, "must lie in [0, " + std::to_string(max) + "]");
  return static_cast<std::size_t>(d);
}

json lief2_object(const LieAlgebraF2& algebra) {
  json brackets = json::array();
  for (std::size_t i = 0; i < algebra.dim(); ++i)
    for (std::size_t j = i + 1; j < algebra.dim(); ++j) {
      const std::uint64_t v = algebra.basis_bracket(i, j);
      if (v == 0) continue;
      json out = json::array();
      for (std::size_t k = 0; k < algebra.dim(); ++k)
        if ((v >> k) & 1u) out.push_back(k);
      brackets.push_back({{"i", i}, {"j", j}, {"out", out}});
    }
  return {{"format", "lief2-v1"}, {"dim", algebra.dim()}, {"brackets", brackets}};
}

LieAlgebraF2 lief2_from(const json& doc, const std::string& root) {
  const json& f = field(doc, "format", root);
  if (!f.is_string() || f.get<std::string>() != "lief2-v1") throw ParseError(root + ".format", "expected \"lief2-v1\"");
  const std::int64_t d = as_int(field(doc, "dim", root), root + ".dim");
  if (d < 0 || d > static_cast<std::int64_t>(LieAlgebraF2::kMaxDim))
    throw ParseError(root + ".dim", "must lie in [0, 64]");
  const std::size_t n = static_cast<std::size_t>(d);
  LieAlgebraF2 l(n);
  const json& brackets = as_array(field(doc, "brackets", root), root + ".brackets");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    const std::string path = root + ".brackets[" + std::to_string(b) + "]";
    const std::size_t i = as_index(field(brackets[b], "i", path), path + ".i", n);
    const std::size_t j = as_index(field(brackets[b], "j", path), path + ".j", n);
    if (i >= j) throw ParseError(path, "requires i < j");
    if (!seen.insert({i, j}).second) throw ParseError(path, "duplicate pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    const json& out = as_array(field(brackets[b], "out", path), path + ".out");
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const std::size_t e = as_index(out[k], path + ".out[" + std::to_string(k) + "]", n);
      if ((value >> e) & 1u) throw ParseError(path + ".out[" + std::to_string(k) + "]", "duplicate basis index");
      value |= std::uint64_t{1} << e;
    }
    l.set_basis_bracket(i, j, value);
  }
  return l;
}

json elements_json(const std::vector<Element>& v) { return json(std::vector<int>(v.begin(), v.end())); }

json split_object(const SplitResult& split) {
  if (!split.witness) return nullptr;
  const SplitWitness& w = *split.witness;
  return {{"K", elements_json(w.k_part)}, {"H", elements_json(w.h_part)}, {"phi", w.phi}};
}

json certificate_object(const SplitResult& split) {
  return {{"k_candidates", split.k_candidates}, {"h_candidates", split.h_candidates}};
}

json mode_fields(const ScanMode& mode) {
  return {{"mode", mode.exhaustive ? "exhaustive" : "sampled"}, {"samples", mode.samples}, {"seed", mode.seed}};
}

}  // namespace

// ------------------------------------------------------------------ lief2

LieAlgebraF2 parse_lief2(const std::string& text) { return lief2_from(parse_json(text, "lief2-v1"), "$"); }

std::string serialize_lief2(const LieAlgebraF2& algebra, int indent) { return lief2_object(algebra).dump(indent); }

// ----------------------------------------------------------------- cayley

FiniteLoop parse_cayley(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto tokens_of = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ls(s);
    for (std::string t; ls >> t;) out.push_back(t);
    return out;
  };
  auto number = [&](const std::string& tok, std::size_t bound) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    const std::string where = "line " + std::to_string(line_no);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError(where, "not a non-negative integer: \"" + tok + "\"");
    if (v >= bound) throw ParseError(where, "entry " + tok + " out of range");
    return v;
  };

  if (!std::getline(in, line)) throw ParseError("line 1", "empty input");
  ++line_no;
  auto head = tokens_of(line);
  if (head.size() != 1) throw ParseError("line 1", "expected the order n alone");
  const std::size_t n = number(head[0], FiniteLoop::kMaxOrder + 1);
  if (n == 0) throw ParseError("line 1", "order must be positive");

  std::vector<Element> table;
  table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!std::getline(in, line)) throw ParseError("line " + std::to_string(line_no + 1), "missing row " + std::to_string(r));
    ++line_no;
    auto row = tokens_of(line);
    if (row.size() != n)
      throw ParseError("line " + std::to_string(line_no),
                       "expected " + std::to_string(n) + " entries, found " + std::to_string(row.size()));
    for (const auto& t : row) table.push_back(static_cast<Element>(number(t, n)));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokens_of(line).empty()) throw ParseError("line " + std::to_string(line_no), "unexpected content after the table");
  }
  return FiniteLoop::from_table(n, std::move(table));
}

std::string serialize_cayley(const FiniteLoop& q) {
  std::string out = std::to_string(q.order()) + "\n";
  for (std::size_t r = 0; r < q.order(); ++r) {
    const auto row = q.row(static_cast<Element>(r));
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      out += std::to_string(row[c]);
    }
    out += '\n';
  }
  return out;
}

// ------------------------------------------------------------------- beta

BetaMap parse_beta(const std::string& text) {
  const json doc = parse_json(text, "beta-v1");
  expect_format(doc, "beta-v1");
  BetaMap beta;
  beta.k_dim = parse_dim(doc, "k_dim", 14);
  beta.h_dim = parse_dim(doc, "h_dim", 14);
  const json& ms = as_array(field(doc, "matrices", "$"), "$.matrices");
  if (ms.size() != beta.h_dim) throw ParseError("$.matrices", "expected h_dim matrices");
  for (std::size_t l = 0; l < ms.size(); ++l)
    beta.matrices.push_back(parse_matrix(ms[l], beta.k_dim, "$.matrices[" + std::to_string(l) + "]"));
  return beta;
}

std::string serialize_beta(const BetaMap& beta) {
  json ms = json::array();
  for (const auto& m : beta.matrices) ms.push_back(matrix_json(m));
  return json{{"format", "beta-v1"}, {"k_dim", beta.k_dim}, {"h_dim", beta.h_dim}, {"matrices", ms}}.dump(2);
}

// ---------------------------------------------------------------- horajed

HoraJedInput parse_horajed(const std::string& text) {
  const json doc = parse_json(text, "horajed-v1");
  expect_format(doc, "horajed-v1");
  const std::size_t k = parse_dim(doc, "k_dim", 14);
  const std::size_t h = parse_dim(doc, "h_dim", 14);
  HoraJedInput in;
  const json& xs = as_array(field(doc, "x", "$"), "$.x");
  for (std::size_t l = 0; l < xs.size(); ++l) in.x_set.push_back(parse_matrix(xs[l], k, "$.x[" + std::to_string(l) + "]"));
  const json& ms = as_array(field(doc, "m", "$"), "$.m");
  if (ms.size() != h) throw ParseError("$.m", "expected h_dim rows");
  for (std::size_t l = 0; l < h; ++l) {
    const std::string path = "$.m[" + std::to_string(l) + "]";
    as_array(ms[l], path);
    if (ms[l].size() != h) throw ParseError(path, "expected h_dim entries");
    in.m_basis.emplace_back();
    for (std::size_t r = 0; r < h; ++r)
      in.m_basis.back().push_back(parse_matrix(ms[l][r], k, path + "[" + std::to_string(r) + "]"));
  }
  return in;
}

std::string serialize_horajed(const HoraJedInput& input) {
  const std::size_t k = input.x_set.empty() ? 0 : input.x_set.front().rows();
  json xs = json::array(), ms = json::array();
  for (const auto& x : input.x_set) xs.push_back(matrix_json(x));
  for (const auto& row : input.m_basis) {
    json r = json::array();
    for (const auto& m : row) r.push_back(matrix_json(m));
    ms.push_back(r);
  }
  return json{{"format", "horajed-v1"}, {"k_dim", k}, {"h_dim", input.m_basis.size()}, {"x", xs}, {"m", ms}}.dump(2);
}

// ---------------------------------------------------------------- reports

std::string scan_report_json(const ScanReport& report, int indent) {
  json doc = {{"dim", report.dim}};
  doc.update(mode_fields(report.mode));
  json cx = json::array();
  for (const auto& c : report.counterexamples) {
    json o = lief2_object(c.algebra);
    o["verdict"] = verdict_name(c.verdict);
    cx.push_back(o);
  }
  doc.update({{"candidates", report.candidates},
              {"jacobi_passed", report.jacobi_passed},
              {"consistent", report.consistent},
              {"w2_true", report.w2_true},
              {"w2_false", report.w2_false},
              {"skipped_budget", report.skipped_budget},
              {"counterexamples", cx},
              {"unexercised_branches", report.unexercised_branches}});
  return doc.dump(indent);
}

ScanReport parse_scan_report(const std::string& text) {
  const json doc = parse_json(text, "scan report");
  ScanReport r;
  auto count = [&](const char* key) {
    const std::int64_t v = as_int(field(doc, key, "$"), std::string("$.") + key);
    if (v < 0) throw ParseError(std::string("$.") + key, "must be non-negative");
    return static_cast<std::uint64_t>(v);
  };
  r.dim = count("dim");
  const json& mode = field(doc, "mode", "$");
  if (mode != "exhaustive" && mode != "sampled") throw ParseError("$.mode", "expected \"exhaustive\" or \"sampled\"");
  r.mode.exhaustive = mode == "exhaustive";
  r.mode.samples = count("samples");
  r.mode.seed = field(doc, "seed", "$").get<std::uint64_t>();
  r.candidates = count("candidates");
  r.jacobi_passed = count("jacobi_passed");
  r.consistent = count("consistent");
  r.w2_true = count("w2_true");
  r.w2_false = count("w2_false");
  r.skipped_budget = count("skipped_budget");
  const json& cx = as_array(field(doc, "counterexamples", "$"), "$.counterexamples");
  for (std::size_t c = 0; c < cx.size(); ++c) {
    const std::string path = "$.counterexamples[" + std::to_string(c) + "]";
    ScanCounterexample e{lief2_from(cx[c], path), Verdict::kConsistent};
    const json& v = field(cx[c], "verdict", path);
    if (v == "counterexample_a")
      e.verdict = Verdict::kCounterexampleA;
    else if (v == "counterexample_b")
      e.verdict = Verdict::kCounterexampleB;
    else if (v != "consistent")
      throw ParseError(path + ".verdict", "unknown verdict");
    r.counterexamples.push_back(std::move(e));
  }
  const json& ub = as_array(field(doc, "unexercised_branches", "$"), "$.unexercised_branches");
  for (const auto& b : ub) {
    if (!b.is_string()) throw ParseError("$.unexercised_branches", "expected strings");
    r.unexercised_branches.push_back(b.get<std::string>());
  }
  return r;
}

std::string nonsplit_report_json(const NonsplitReport& report, int indent) {
  json doc = {{"dim", report.dim}};
  doc.update(mode_fields(report.mode));
  json ws = json::array();
  for (const auto& w : report.witnesses)
    ws.push_back({{"algebra", lief2_object(w.algebra)},
                  {"order", w.loop.order()},
                  {"nucleus_index", w.nucleus_index},
                  {"middle_nucleus", elements_json(middle_nucleus(w.loop))},
                  {"split", split_object(w.search)},
                  {"split_certificate", certificate_object(w.search)}});
  doc.update({{"candidates", report.candidates},
              {"jacobi_passed", report.jacobi_passed},
              {"automorphic", report.automorphic},
              {"nucleus_index4", report.nucleus_index4},
              {"witnesses", ws}});
  return doc.dump(indent);
}

std::string loop_report_json(const LoopReport& report, int indent) {
  json doc = {{"order", report.order},
              {"commutative", report.flags.commutative},
              {"exponent2", report.flags.exponent2},
              {"associative", report.flags.associative},
              {"automorphic", report.automorphic},
              {"center", elements_json(report.nuclei.center)},
              {"commutant", elements_json(report.nuclei.commutant)},
              {"nucleus_left", elements_json(report.nuclei.left)},
              {"nucleus_middle", elements_json(report.nuclei.middle)},
              {"nucleus_right", elements_json(report.nuclei.right)}};
  if (report.split) {
    doc["split"] = split_object(*report.split);
    doc["split_certificate"] = certificate_object(*report.split);
  } else {
    doc["split"] = nullptr;
  }
  return doc.dump(indent);
}

std::string split_json(const SplitResult& split, int indent) {
  return json{{"split", split_object(split)}, {"split_certificate", certificate_object(split)}}.dump(indent);
}

std::string lie_props_json(const LieAlgebraF2& algebra, std::size_t budget_order, int indent) {
  const SeriesReport s = series(algebra);
  json doc = {{"dim", algebra.dim()},
              {"jacobi", true},
              {"nilpotent", s.nilpotent},
              {"lower_central_dims", s.lower_central_dims},
              {"derived_dims", s.derived_dims}};
  try {
    doc["w1"] = check_w1(algebra);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnsupportedParams) throw;
    doc["w1"] = nullptr;
  }
  auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  try {
    const ClassifyVerdict v = classify_lie(algebra, budget_order);
    doc.update({{"w2", opt(v.w2)}, {"w2plus", opt(v.w2plus)}, {"w2minus", opt(v.w2minus)}, {"verdict", verdict_name(v.verdict)}});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExceeded && e.code() != ErrorCode::kW1Violation) throw;
    doc.update({{"w2", check_w2(algebra)}, {"w2plus", nullptr}, {"w2minus", nullptr}, {"verdict", nullptr}});
  }
  return doc.dump(indent);
}

}  // namespace aloop
