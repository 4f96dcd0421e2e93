#include "heyting/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "heyting/contextuality.hpp"
#include "heyting/divisor_lattice.hpp"
#include "heyting/expression.hpp"
#include "heyting/group.hpp"
#include "heyting/quantum.hpp"

namespace heyting::cli {

namespace {

// Support used by --a/--b when n = 900: indices whose tau-profile matches the
// worked example (|X;180>, |X;25>, |X;5>).
const std::vector<std::size_t> kExampleSupport{180, 25, 5};

struct Options {
  std::optional<std::uint64_t> n;
  std::vector<std::uint64_t> tuple;
  std::string expression;
  std::string rho_path;
  std::optional<double> a;
  std::optional<double> b;
  std::vector<std::size_t> support;
  std::optional<std::uint64_t> seed;
  unsigned grid = SearchConfig{}.grid;
  std::size_t samples = SearchConfig{}.samples;
  std::size_t max_len = SearchConfig{}.max_tuple;
  std::size_t rank = SearchConfig{}.ginibre_rank;
  int threads = 0;
  std::string op;
  std::string dot_path;
  std::string csv_path;
  bool as_group = false;
};

// Writes to `path`, or to `out` when the path is empty.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::uint64_t require_n(const Options& o) {
  if (!o.n) throw std::invalid_argument("--n is required");
  return *o.n;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Expr e = parse_expression(o.expression);
  SupernaturalNumber value;
  if (o.n) {
    const ModulusPtr modulus = Modulus::make(*o.n);
    const DivisorElement d = evaluate(e, modulus);
    out << d.value() << '\n';
    value = SupernaturalNumber::from_natural(d.value());
  } else {
    value = evaluate(e);
    out << value.to_string() << '\n';
  }
  if (o.as_group) {
    out << "group: " << describe_group(value, false).to_string() << '\n';
    out << "dual: " << describe_group(value, true).to_string() << '\n';
  }
  return kOk;
}

int cmd_table(const Options& o, std::ostream& out) {
  const ModulusPtr modulus = Modulus::make(require_n(o));
  emit(o.csv_path, out, [&](std::ostream& s) {
    if (o.op.empty()) {
      write_truth_table(s, modulus);
    } else {
      write_truth_table(s, modulus, parse_connective(o.op));
    }
  });
  return kOk;
}

int cmd_hasse(const Options& o, std::ostream& out) {
  const ModulusPtr modulus = Modulus::make(require_n(o));
  emit(o.dot_path, out, [&](std::ostream& s) { write_dot(s, *modulus); });
  return kOk;
}

DensityMatrix bell_state(const Options& o, std::uint64_t n) {
  if (!o.rho_path.empty()) {
    if (o.a || o.b) throw std::invalid_argument("--rho and --a/--b are exclusive");
    return load_density(o.rho_path);
  }
  if (!o.a || !o.b) throw std::invalid_argument("bell needs --rho FILE or both --a and --b");
  std::vector<std::size_t> support = o.support;
  if (support.empty()) {
    if (n != 900) throw std::invalid_argument("--support i,j,k is required unless n = 900");
    support = kExampleSupport;
  }
  if (support.size() != 3) throw std::invalid_argument("--support takes three indices");
  const double a = *o.a;
  const double b = *o.b;
  if (a < 0 || b < 0 || a + b > 1 + tolerance::kTrace) {
    throw InvalidState("trace", "--a/--b need a, b >= 0 and a + b <= 1");
  }
  return three_point_state(n, support[0], support[1], support[2], a, b);
}

int cmd_bell(const Options& o, std::ostream& out) {
  const std::uint64_t n = require_n(o);
  if (o.tuple.empty()) throw std::invalid_argument("--m a,b,... is required");
  const ModulusPtr modulus = Modulus::make(n);
  const DensityMatrix rho = bell_state(o, n);
  const BellReport report = bell_check(modulus, o.tuple, rho);
  out << report.to_json().dump(2) << '\n';
  return report.violated ? kViolated : kOk;
}

int cmd_search(const Options& o, std::ostream& out) {
  const std::uint64_t n = require_n(o);
  if (!o.seed) throw std::invalid_argument("--seed is required for search");
  SearchConfig config;
  config.seed = *o.seed;
  config.grid = o.grid;
  config.samples = o.samples;
  config.max_tuple = o.max_len;
  config.ginibre_rank = o.rank;
  config.threads = o.threads;
  const SearchResult result = search_violation(n, config);
  if (!o.csv_path.empty()) emit(o.csv_path, out, [&](std::ostream& s) { result.write_csv(s); });
  out << result.to_json(config).dump(2) << '\n';
  return result.best.violated ? kViolated : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heyting algebras of divisors, finite quantum subsystems and logical Bell checks",
               "heyting"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "Evaluate a lattice expression");
  eval->add_option("expression", o.expression, "e.g. \"10 => 75\", \"neg Omega({2})\"")
      ->required();
  eval->add_option("--n", o.n, "Evaluate in D(n) instead of the supernatural numbers");
  eval->add_flag("--as-group", o.as_group, "Also render the groups C(x) and their duals");

  auto* table = app.add_subcommand("table", "Truth table of the connectives over D(n) as CSV");
  table->add_option("--n", o.n)->required();
  table->add_option("--op", o.op, "meet | join | implies | equiv | neg (default: all)");
  table->add_option("--csv", o.csv_path, "Write to FILE instead of stdout");

  auto* hasse = app.add_subcommand("hasse", "Hasse diagram of D(n) in DOT");
  hasse->add_option("--n", o.n)->required();
  hasse->add_option("--dot", o.dot_path, "Write to FILE instead of stdout");

  auto* bell = app.add_subcommand("bell", "Check the Bell inequality for one tuple and state");
  bell->add_option("--n", o.n)->required();
  bell->add_option("--m", o.tuple, "Tuple m_1,...,m_l")->delimiter(',')->required();
  bell->add_option("--rho", o.rho_path, "Density matrix JSON");
  bell->add_option("--a", o.a, "Weight on the first support index");
  bell->add_option("--b", o.b, "Weight on the second support index");
  bell->add_option("--support", o.support, "Indices i,j,k for --a/--b (default 180,25,5 at n=900)")
      ->delimiter(',');

  auto* search = app.add_subcommand("search", "Search tuples and states for a violation");
  search->add_option("--n", o.n)->required();
  search->add_option("--seed", o.seed, "Seed for the Ginibre samples (required)");
  search->add_option("--grid", o.grid, "Grid resolution")->capture_default_str();
  search->add_option("--samples", o.samples, "Number of Ginibre states")->capture_default_str();
  search->add_option("--max-len", o.max_len, "Largest tuple size")->capture_default_str();
  search->add_option("--rank", o.rank, "Columns of the Ginibre matrix")->capture_default_str();
  search->add_option("--threads", o.threads, "OpenMP threads (0: default)");
  search->add_option("--csv", o.csv_path, "Per-tuple summary CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*table) return cmd_table(o, out);
    if (*hasse) return cmd_hasse(o, out);
    if (*bell) return cmd_bell(o, out);
    if (*search) return cmd_search(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n' << e.caret() << '\n';
    return kError;
  } catch (const InvalidState& e) {
    err << "error: invalid state (" << e.invariant() << "): " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace heyting::cli
