#include "qdutch/io/files.hpp"

#include <cctype>
#include <fstream>

#include "qdutch/errors.hpp"

namespace qdutch::io {

using classical::OutcomeSpace;
using classical::Proposition;
using nlohmann::json;

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const OutcomeSpace& space, const std::string& text) : space_(space), text_(text) {}

  Proposition parse() {
    Proposition p = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  Proposition parse_or() {
    Proposition p = parse_and();
    while (accept('|')) p = p | parse_and();
    return p;
  }

  Proposition parse_and() {
    Proposition p = parse_not();
    while (accept('&')) p = p & parse_not();
    return p;
  }

  Proposition parse_not() {
    if (accept('!')) return !parse_not();
    if (accept('(')) {
      Proposition p = parse_or();
      if (!accept(')')) fail("missing ')'");
      return p;
    }
    const std::string name = identifier();
    if (name.empty()) fail("expected an atom name");
    if (name == "TRUE") return Proposition::tautology(space_.size());
    if (name == "FALSE") return Proposition::contradiction(space_.size());
    auto index = space_.index_of(name);
    if (!index) fail("unknown atom '" + name + "'");
    return Proposition::atom(space_.size(), *index);
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '.')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("proposition '" + text_ + "': " + why);
  }

  const OutcomeSpace& space_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return obj.at(name);
}

Rational exact_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (v.is_number_integer()) return Rational(BigInt(v.get<long>()));
  if (!v.is_string()) throw InputError(std::string("field '") + name + "' must be a \"p/q\" string");
  return parse_rational(v.get<std::string>());
}

double real_number(const json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

Proposition parse_proposition(const OutcomeSpace& space, const std::string& text) {
  return ExpressionParser(space, text).parse();
}

classical::Book parse_book(const json& doc) {
  const json& atoms = field(doc, "atoms");
  if (!atoms.is_array()) throw InputError("'atoms' must be an array of names");
  std::vector<std::string> names;
  for (const auto& a : atoms) {
    if (!a.is_string()) throw InputError("atom names must be strings");
    names.push_back(a.get<std::string>());
  }
  classical::Book book{OutcomeSpace(std::move(names)), {}};

  const json& bets = field(doc, "bets");
  if (!bets.is_array()) throw InputError("'bets' must be an array");
  for (const auto& b : bets) {
    classical::ConditionalBet bet;
    bet.target = parse_proposition(book.space, field(b, "target").get<std::string>());
    bet.condition = b.contains("condition") ? parse_proposition(book.space, b.at("condition").get<std::string>())
                                            : Proposition::tautology(book.space.size());
    bet.quotient = exact_field(b, "quotient");
    bet.stake = b.contains("stake") ? exact_field(b, "stake") : Rational(1);
    book.bets.push_back(std::move(bet));
  }
  return book;
}

json book_to_json(const classical::Book& book) {
  json doc;
  doc["atoms"] = book.space.names();
  doc["bets"] = json::array();
  for (const auto& bet : book.bets) {
    doc["bets"].push_back({{"target", bet.target.to_string(book.space)},
                           {"condition", bet.condition.to_string(book.space)},
                           {"quotient", format_rational(bet.quotient)},
                           {"stake", format_rational(bet.stake)}});
  }
  return doc;
}

quantum::Operator<double> parse_operator(const json& doc) {
  const json& dim = field(doc, "dimension");
  if (!dim.is_number_integer() || dim.get<long>() < 1) throw InputError("'dimension' must be a positive integer");
  const auto d = static_cast<Eigen::Index>(dim.get<long>());
  const json& entries = field(doc, "entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != d * d) {
    throw InputError("'entries' must hold dimension^2 [re, im] pairs");
  }
  quantum::Operator<double> m(d, d);
  for (Eigen::Index i = 0; i < d * d; ++i) {
    const json& e = entries[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2) throw InputError("each entry must be an [re, im] pair");
    m(i / d, i % d) = {real_number(e[0], "entry real part"), real_number(e[1], "entry imaginary part")};
  }
  return m;
}

json operator_to_json(const quantum::Operator<double>& m) {
  json doc;
  doc["dimension"] = m.rows();
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  doc["entries"] = std::move(entries);
  return doc;
}

std::vector<quantum::Projector<double>> parse_projectors(const json& doc, const quantum::Tolerances<double>& tol) {
  const json& list = doc.is_array() ? doc : field(doc, "projectors");
  if (!list.is_array()) throw InputError("'projectors' must be an array");
  std::vector<quantum::Projector<double>> out;
  for (const auto& p : list) out.push_back(quantum::Projector<double>::from_matrix(parse_operator(p), tol));
  return out;
}

std::vector<quantum::QuantumBet<double>> parse_quantum_book(const json& doc,
                                                            const quantum::DensityOperator<double>& rho,
                                                            const quantum::Tolerances<double>& tol) {
  const json& bets = field(doc, "bets");
  if (!bets.is_array()) throw InputError("'bets' must be an array");
  std::vector<quantum::QuantumBet<double>> out;
  for (const auto& b : bets) {
    auto target = quantum::Projector<double>::from_matrix(parse_operator(field(b, "target")), tol);
    const json& c = b.contains("condition") ? b.at("condition") : json("IDENTITY");
    auto condition = c.is_string() && c.get<std::string>() == "IDENTITY"
                         ? quantum::Projector<double>::identity(rho.dimension())
                         : quantum::Projector<double>::from_matrix(parse_operator(c), tol);
    const json& q = field(b, "quotient");
    const double quotient = q.is_string() && q.get<std::string>() == "coherent"
                                ? quantum::conditional(rho, target, condition, tol)
                                : real_number(q, "quotient");
    const double stake = b.contains("stake") ? real_number(b.at("stake"), "stake") : 1.0;
    out.push_back({std::move(target), std::move(condition), quotient, stake});
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace qdutch::io
