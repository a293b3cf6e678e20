#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "qdutch/classical/coherence.hpp"
#include "qdutch/quantum/operators.hpp"

namespace qdutch::io {

/// Parses a proposition over `space`: atom names combined with & | ! and
/// parentheses; TRUE and FALSE are the constants. ! binds tightest, then &.
classical::Proposition parse_proposition(const classical::OutcomeSpace& space, const std::string& text);

/// Book file:
///   {"atoms": ["a", "b"],
///    "bets": [{"target": "a & !b", "condition": "TRUE",
///              "quotient": "3/5", "stake": "1/1"}, ...]}
/// Quotients and stakes are exact "p/q" strings; stake defaults to "1/1".
classical::Book parse_book(const nlohmann::json& doc);
nlohmann::json book_to_json(const classical::Book& book);

/// Operator file: {"dimension": d, "entries": [[re, im], ...]} with d*d
/// entries in row-major order.
quantum::Operator<double> parse_operator(const nlohmann::json& doc);
nlohmann::json operator_to_json(const quantum::Operator<double>& m);

/// Projector list: {"projectors": [<operator>, ...]} or a bare array.
std::vector<quantum::Projector<double>> parse_projectors(const nlohmann::json& doc,
                                                         const quantum::Tolerances<double>& tol);

/// Quantum book:
///   {"bets": [{"target": <operator>, "condition": <operator> | "IDENTITY",
///              "quotient": <number> | "coherent", "stake": <number>}, ...]}
/// "coherent" quotients are filled in from `rho` as q(target | condition).
std::vector<quantum::QuantumBet<double>> parse_quantum_book(const nlohmann::json& doc,
                                                            const quantum::DensityOperator<double>& rho,
                                                            const quantum::Tolerances<double>& tol);

nlohmann::json read_json_file(const std::string& path);

}  // namespace qdutch::io
