#pragma once

// Text and JSON encodings: lief2-v1, cayley-v1, beta-v1, horajed-v1 and the
// JSON reports. Parsers throw ParseError with a field path or line number.

#include <string>

#include "aloop/constructions.hpp"
#include "aloop/lie.hpp"
#include "aloop/loop.hpp"
#include "aloop/survey.hpp"

namespace aloop {

LieAlgebraF2 parse_lief2(const std::string& text);
/// Canonical form: pairs in (i, j) order, zero brackets omitted, "out" ascending.
std::string serialize_lief2(const LieAlgebraF2& algebra, int indent = 2);

/// First line n, then n rows of n whitespace-separated 0-based indices.
FiniteLoop parse_cayley(const std::string& text);
std::string serialize_cayley(const FiniteLoop& q);

BetaMap parse_beta(const std::string& text);
std::string serialize_beta(const BetaMap& beta);

/// {"format": "horajed-v1", "k_dim", "h_dim", "x": [matrices], "m": [[matrices]]}
HoraJedInput parse_horajed(const std::string& text);
std::string serialize_horajed(const HoraJedInput& input);

std::string scan_report_json(const ScanReport& report, int indent = 2);
ScanReport parse_scan_report(const std::string& text);

std::string nonsplit_report_json(const NonsplitReport& report, int indent = 2);

std::string loop_report_json(const LoopReport& report, int indent = 2);
/// Only the split part of a LoopReport ("split" and "split_certificate").
std::string split_json(const SplitResult& split, int indent = 2);

/// Series dimensions, W1, W2, W2+ and (budget permitting) W2- with the verdict.
/// The algebra must already satisfy Jacobi.
std::string lie_props_json(const LieAlgebraF2& algebra, std::size_t budget_order = kDefaultBudgetOrder,
                           int indent = 2);

}  // namespace aloop
