#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qdutch/classical/coherence.hpp"
#include "qdutch/errors.hpp"
#include "qdutch/exchangeable/succession.hpp"
#include "qdutch/io/files.hpp"
#include "qdutch/montecarlo/oracle.hpp"
#include "qdutch/quantum/operators.hpp"

namespace qdutch::cli {

namespace {

using exchangeable::MeasureKind;
using nlohmann::json;

struct Options {
  std::string measure = "pure";
  std::string n = "0";
  long k = -1;
  std::string kfrac;
  std::uint64_t seed = 42;
  long samples = 1'000'000;
  double tol = 1e-9;
  std::string out;
  std::string format;
  std::vector<std::string> files;
};

std::vector<long> parse_n_list(const std::string& text) {
  std::vector<long> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--n expects nonnegative integers, got '" + item + "'");
    }
  }
  if (values.empty()) throw InputError("--n is empty");
  return values;
}

long single_n(const Options& o) {
  auto values = parse_n_list(o.n);
  if (values.size() != 1) throw InputError("this command takes a single --n");
  return values.front();
}

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string format_of(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "csv" && f != "text") throw InputError("--format must be csv or text");
  return f;
}

quantum::Tolerances<double> tolerances(const Options& o) {
  quantum::Tolerances<double> tol;
  tol.operator_tol = o.tol;
  return tol;
}

int cmd_succession(const Options& o, std::ostream& out) {
  const MeasureKind measure = exchangeable::parse_measure(o.measure);
  if (o.k < 0) throw InputError("--k is required");
  const exchangeable::RunSpec spec(single_n(o), o.k);
  const Rational ratio = exchangeable::correction_ratio(measure, spec);
  const Rational value = exchangeable::succession(measure, spec);
  Sink sink(o.out, out);
  if (format_of(o, "text") == "csv") {
    *sink << "measure,n,k,succession_exact,succession_decimal,correction_ratio_exact\n"
          << exchangeable::to_string(measure) << ',' << spec.n << ',' << spec.k << ',' << format_rational(value) << ','
          << format_decimal(value) << ',' << format_rational(ratio) << '\n';
  } else {
    *sink << format_rational(value) << '\n' << format_decimal(value) << '\n';
  }
  return 0;
}

int cmd_figure1(const Options& o, std::ostream& out) {
  const MeasureKind measure = exchangeable::parse_measure(o.measure);
  if (o.kfrac.empty()) throw InputError("--kfrac is required");
  const auto rows = exchangeable::figure1_table(measure, parse_n_list(o.n), parse_rational(o.kfrac));
  Sink sink(o.out, out);
  if (format_of(o, "csv") == "csv") {
    *sink << exchangeable::figure1_csv_header() << '\n';
    for (const auto& r : rows) *sink << exchangeable::figure1_csv_row(r) << '\n';
  } else {
    for (const auto& r : rows) {
      *sink << exchangeable::to_string(r.measure) << " n=" << r.n << " k=" << r.k
            << " ratio=" << format_rational(r.correction_ratio) << " (" << format_decimal(r.correction_ratio)
            << ") succession=" << format_decimal(r.succession) << " laplace=" << format_decimal(r.laplace) << '\n';
    }
  }
  return 0;
}

int cmd_coherence(const Options& o, std::ostream& out) {
  const classical::Book book = io::parse_book(io::read_json_file(o.files.at(0)));
  const auto stakes = classical::find_dutch_book(book);
  Sink sink(o.out, out);
  if (!stakes) {
    *sink << "COHERENT: no stakes force a sure loss\n";
    return 0;
  }
  *sink << "DUTCH BOOK: stakes";
  for (const auto& s : *stakes) *sink << ' ' << format_rational(s);
  *sink << '\n';
  const classical::Book staked = classical::with_stakes(book, *stakes);
  for (std::size_t w = 0; w < book.space.size(); ++w) {
    *sink << "  payoff if " << book.space.names()[w] << ": "
          << format_rational(classical::payoff(staked, classical::OutcomeWord{w})) << '\n';
  }
  return 0;
}

int cmd_axioms(const Options& o, std::ostream& out) {
  const classical::Book book = io::parse_book(io::read_json_file(o.files.at(0)));
  const auto quotients = classical::quotients_of(book);
  const auto violations = classical::check_axioms(book.space, quotients);
  Sink sink(o.out, out);
  if (violations.empty()) {
    *sink << "OK: no axiom violations\n";
    return 0;
  }
  for (const auto& v : violations) {
    *sink << "VIOLATION " << classical::to_string(v.axiom) << ": " << v.detail
          << " (magnitude " << format_rational(v.magnitude) << ")\n";
  }
  return 0;
}

int cmd_luders(const Options& o, std::ostream& out) {
  const auto tol = tolerances(o);
  const auto rho = quantum::DensityOperator<double>::from_matrix(io::parse_operator(io::read_json_file(o.files.at(0))), tol);
  const auto q = quantum::Projector<double>::from_matrix(io::parse_operator(io::read_json_file(o.files.at(1))), tol);
  Sink sink(o.out, out);
  *sink << io::operator_to_json(quantum::luders_update(rho, q, tol).matrix()).dump() << '\n';
  return 0;
}

int cmd_aggregate(const Options& o, std::ostream& out) {
  const auto tol = tolerances(o);
  const auto rho = quantum::DensityOperator<double>::from_matrix(io::parse_operator(io::read_json_file(o.files.at(0))), tol);
  const auto qs = io::parse_projectors(io::read_json_file(o.files.at(1)), tol);
  Sink sink(o.out, out);
  *sink << io::operator_to_json(quantum::aggregated_update(rho, qs, tol).matrix()).dump() << '\n';
  return 0;
}

int cmd_quantum_book(const Options& o, std::ostream& out) {
  const auto tol = tolerances(o);
  const auto rho = quantum::DensityOperator<double>::from_matrix(io::parse_operator(io::read_json_file(o.files.at(0))), tol);
  const auto book = io::parse_quantum_book(io::read_json_file(o.files.at(1)), rho, tol);
  const double average = quantum::quantum_average_payoff(book, rho, tol);
  Sink sink(o.out, out);
  *sink << std::setprecision(17) << "average_payoff " << average << '\n';
  return 0;
}

int cmd_definetti(const Options& o, const std::vector<std::string>& measures, std::ostream& out) {
  const long max_n = single_n(o);
  if (o.samples < 1000) throw InputError("--samples must be at least 1000");
  Sink sink(o.out, out);
  const bool csv = format_of(o, "text") == "csv";
  if (csv) *sink << "measure,quantity,n,k,exact,estimate,stderr,z,pass\n";
  bool all_pass = true;
  for (const auto& name : measures) {
    montecarlo::SampleConfig config;
    config.measure = exchangeable::parse_measure(name);
    config.seed = o.seed;
    config.samples = static_cast<std::size_t>(o.samples);
    for (const auto& r : montecarlo::verify_grid(config, max_n)) {
      all_pass = all_pass && r.pass;
      if (csv) {
        *sink << exchangeable::to_string(r.measure) << ',' << montecarlo::to_string(r.quantity) << ',' << r.n << ','
              << r.k << ',' << format_rational(r.exact) << ',' << std::setprecision(12) << r.estimate << ','
              << r.std_error << ',' << r.z << ',' << (r.pass ? "true" : "false") << '\n';
      } else {
        *sink << montecarlo::report_json(r) << '\n';
      }
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dutch-book coherence, Lueders updates and quantum laws of succession"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--format", o.format, "csv or text");
  };
  auto add_measure = [&](CLI::App* sub) {
    sub->add_option("--measure", o.measure, "pure, flat or bures");
  };

  auto* succ = app.add_subcommand("succession", "Exact predictive probability for one run");
  add_measure(succ);
  succ->add_option("--n", o.n, "Trials")->required();
  succ->add_option("--k", o.k, "Successes")->required();
  add_common(succ);

  auto* fig = app.add_subcommand("figure1", "Correction-ratio table over n at fixed k/n");
  add_measure(fig);
  fig->add_option("--n", o.n, "Comma-separated trial counts")->required();
  fig->add_option("--kfrac", o.kfrac, "Success fraction as p/q")->required();
  add_common(fig);

  auto* coh = app.add_subcommand("coherence-check", "Search a book for a Dutch book");
  coh->add_option("book", o.files, "Book file")->required()->expected(1);
  add_common(coh);

  auto* ax = app.add_subcommand("axioms-check", "List probability-axiom violations of a book's quotients");
  ax->add_option("book", o.files, "Book file")->required()->expected(1);
  add_common(ax);

  auto* lu = app.add_subcommand("luders", "Post-measurement state for one projector");
  lu->add_option("files", o.files, "STATE PROJECTOR")->required()->expected(2);
  lu->add_option("--tol", o.tol, "Operator tolerance");
  add_common(lu);

  auto* ag = app.add_subcommand("aggregate", "Pooled post-measurement state for a projector family");
  ag->add_option("files", o.files, "STATE PROJECTORS")->required()->expected(2);
  ag->add_option("--tol", o.tol, "Operator tolerance");
  add_common(ag);

  auto* qb = app.add_subcommand("quantum-book", "Average payoff of a conditional book on projectors");
  qb->add_option("files", o.files, "STATE BOOK")->required()->expected(2);
  qb->add_option("--tol", o.tol, "Operator tolerance");
  add_common(qb);

  std::string dv_measure;
  auto* dv = app.add_subcommand("definetti-verify", "Monte Carlo check of the exact engine");
  dv->add_option("--measure", dv_measure, "pure, flat or bures (default: all three)");
  dv->add_option("--n", o.n, "Largest n of the grid")->default_val("8");
  dv->add_option("--seed", o.seed, "RNG seed")->default_val(42);
  dv->add_option("--samples", o.samples, "Samples per measure")->default_val(1000000);
  add_common(dv);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (succ->parsed()) return cmd_succession(o, out);
    if (fig->parsed()) return cmd_figure1(o, out);
    if (coh->parsed()) return cmd_coherence(o, out);
    if (ax->parsed()) return cmd_axioms(o, out);
    if (lu->parsed()) return cmd_luders(o, out);
    if (ag->parsed()) return cmd_aggregate(o, out);
    if (qb->parsed()) return cmd_quantum_book(o, out);
    if (dv->parsed()) {
      std::vector<std::string> measures =
          dv_measure.empty() ? std::vector<std::string>{"pure", "flat", "bures"} : std::vector<std::string>{dv_measure};
      return cmd_definetti(o, measures, out);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidOperatorError& e) {
    err << "invalid operator: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed file: " << e.what() << '\n';
    return 2;
  } catch (const NullConditionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qdutch::cli
