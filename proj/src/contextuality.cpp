#include "heyting/contextuality.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include <omp.h>

namespace heyting {

namespace {

// The lattice data a Bell check needs, independent of the state.
struct TupleShape {
  std::vector<std::uint64_t> members;
  std::vector<std::uint64_t> negs;
  std::vector<std::uint64_t> join_negs;
  std::uint64_t r = 0;
};

TupleShape shape_of(std::span<const DivisorElement> tuple) {
  if (tuple.empty()) throw std::invalid_argument("bell check needs at least one member");
  const ModulusPtr& modulus = tuple.front().modulus();
  TupleShape shape;
  for (const auto& m : tuple) {
    if (m.n() != modulus->n()) throw ModulusMismatch(modulus->n(), m.n());
    if (m.value() == 1) throw std::invalid_argument("tuple members must differ from 1");
    const DivisorElement not_m = neg(m);
    shape.members.push_back(m.value());
    shape.negs.push_back(not_m.value());
    shape.join_negs.push_back(join(m, not_m).value());
  }
  shape.r = neg(meet(modulus, tuple)).value();
  return shape;
}

struct Sides {
  double lhs;
  double bound;
};

// Both sides of the inequality. Shared by bell_check and the search kernel so
// that margins agree bit for bit.
// `bottom` is the key tau_of expects for the divisor 1.
template <typename TauOf>
Sides sides(const TupleShape& shape, std::uint64_t bottom, TauOf tau_of) {
  const double lowest = tau_of(bottom);
  double lhs = 0.0;
  double factors = 0.0;
  for (std::size_t i = 0; i < shape.members.size(); ++i) {
    lhs += tau_of(shape.members[i]) - lowest;
    factors += 1.0 - tau_of(shape.join_negs[i]);
  }
  const double bound = static_cast<double>(shape.members.size()) - tau_of(shape.r) - factors;
  return {lhs, bound};
}

BellReport report_from(const TupleShape& shape, std::uint64_t n, const DensityMatrix& rho) {
  auto tau_of = [&](std::uint64_t d) { return tau(d, rho); };
  BellReport rep;
  rep.n = n;
  rep.tuple = shape.members;
  const double lowest = tau_of(1);
  for (std::size_t i = 0; i < shape.members.size(); ++i) {
    MemberReport mr;
    mr.m = shape.members[i];
    mr.neg = shape.negs[i];
    mr.join_neg = shape.join_negs[i];
    mr.tau_tilde = tau_of(mr.m) - lowest;
    mr.tau_join_neg = tau_of(mr.join_neg);
    mr.f = 1.0 - mr.tau_join_neg;
    rep.members.push_back(mr);
  }
  rep.r = shape.r;
  rep.tau_r = tau_of(shape.r);
  const Sides s = sides(shape, 1, tau_of);
  rep.lhs = s.lhs;
  rep.bound = s.bound;
  rep.margin = s.lhs - s.bound;
  rep.violated = rep.margin > kViolationThreshold;
  return rep;
}

}  // namespace

// Contexts

Context::Context(ModulusPtr modulus, std::vector<std::uint64_t> members)
    : modulus_(std::move(modulus)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::uint64_t m : members) members_.emplace_back(modulus_, m);
  if (!is_context(members_)) throw std::invalid_argument("context members must form a chain");
}

std::uint64_t disjunction_dimension(std::uint64_t m1, std::uint64_t m2) {
  return std::lcm(m1, m2) + std::gcd(m1, m2) - m1 - m2;
}

bool is_context(std::span<const DivisorElement> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i].n() != members[j].n()) throw ModulusMismatch(members[i].n(), members[j].n());
      if (disjunction_dimension(members[i].value(), members[j].value()) != 0) return false;
    }
  }
  return true;
}

double heyting_factor(const DivisorElement& m, const DensityMatrix& rho) {
  if (rho.dim() != m.n()) throw std::invalid_argument("state dimension differs from modulus");
  return 1.0 - tau(join(m, neg(m)).value(), rho);
}

double pseudo_distance(const DivisorElement& m, const DivisorElement& k, const DensityMatrix& rho) {
  if (rho.dim() != m.n()) throw std::invalid_argument("state dimension differs from modulus");
  return tau_tilde(join(m, k).value(), rho) - tau_tilde(meet(m, k).value(), rho);
}

// Bell check

nlohmann::ordered_json BellReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["tuple"] = tuple;
  auto ms = nlohmann::ordered_json::array();
  for (const auto& m : members) {
    nlohmann::ordered_json e;
    e["m"] = m.m;
    e["neg"] = m.neg;
    e["join_neg"] = m.join_neg;
    e["tau_tilde"] = m.tau_tilde;
    e["tau_join_neg"] = m.tau_join_neg;
    e["f"] = m.f;
    ms.push_back(std::move(e));
  }
  j["members"] = std::move(ms);
  j["r"] = r;
  j["tau_r"] = tau_r;
  j["lhs"] = lhs;
  j["bound"] = bound;
  j["margin"] = margin;
  j["violated"] = violated;
  return j;
}

BellReport bell_check(std::span<const DivisorElement> tuple, const DensityMatrix& rho) {
  const TupleShape shape = shape_of(tuple);
  const std::uint64_t n = tuple.front().n();
  if (rho.dim() != n) throw std::invalid_argument("state dimension differs from modulus");
  return report_from(shape, n, rho);
}

BellReport bell_check(const ModulusPtr& modulus, std::span<const std::uint64_t> tuple,
                      const DensityMatrix& rho) {
  std::vector<DivisorElement> xs;
  for (std::uint64_t m : tuple) xs.emplace_back(modulus, m);
  return bell_check(xs, rho);
}

DensityMatrix three_point_state(std::size_t n, std::size_t i, std::size_t j, std::size_t k,
                                double a, double b) {
  if (i >= n || j >= n || k >= n) throw std::invalid_argument("support index out of range");
  std::vector<double> d(n, 0.0);
  d[i] += a;
  d[j] += b;
  d[k] += 1.0 - a - b;
  return DensityMatrix::diagonal(std::move(d));
}

// Search

std::string StateDescriptor::to_string() const {
  std::ostringstream out;
  if (kind == Kind::ginibre) {
    out << "ginibre#" << sample;
    return out.str();
  }
  bool first = true;
  for (const auto& [idx, w] : support) {
    if (!first) out << " + ";
    out << w << '/' << grid << "|" << idx << '>';
    first = false;
  }
  return out.str();
}

nlohmann::ordered_json StateDescriptor::to_json() const {
  nlohmann::ordered_json j;
  if (kind == Kind::ginibre) {
    j["kind"] = "ginibre";
    j["sample"] = sample;
    return j;
  }
  j["kind"] = "grid";
  j["grid"] = grid;
  auto sup = nlohmann::ordered_json::array();
  for (const auto& [idx, w] : support) sup.push_back({idx, w});
  j["support"] = std::move(sup);
  return j;
}

bool descriptor_less(const StateDescriptor& a, const StateDescriptor& b) {
  if (a.kind != b.kind) return a.kind == StateDescriptor::Kind::grid;
  if (a.kind == StateDescriptor::Kind::ginibre) return a.sample < b.sample;
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  return a.support < b.support;
}

namespace {

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t sample) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
  return std::mt19937_64(seq);
}

std::size_t effective_rank(std::size_t n, const SearchConfig& config) {
  return std::max<std::size_t>(1, std::min(n, config.ginibre_rank));
}

std::vector<double> sample_diagonal(std::size_t n, const SearchConfig& config, std::size_t sample) {
  auto rng = sample_rng(config.seed, sample);
  return ginibre_diagonal(n, effective_rank(n, config), rng);
}

void validate_search(std::uint64_t n, const SearchConfig& config) {
  if (n < 2) throw std::invalid_argument("search needs n >= 2 (D(1) - {1} is empty)");
  if (n > kDenseCap) {
    throw std::invalid_argument("search dimension " + std::to_string(n) + " exceeds cap " +
                                std::to_string(kDenseCap));
  }
  if (config.grid == 0) throw std::invalid_argument("grid resolution must be positive");
  if (config.max_tuple == 0) throw std::invalid_argument("max tuple size must be positive");
}

// Strict "a is a better pick than b": higher margin, then smaller descriptor.
bool better(double margin_a, const StateDescriptor& a, double margin_b, const StateDescriptor& b) {
  if (margin_a != margin_b) return margin_a > margin_b;
  return descriptor_less(a, b);
}

StateDescriptor vertex(std::size_t index, unsigned grid) {
  return {StateDescriptor::Kind::grid, {{index, grid}}, grid, 0};
}

StateDescriptor ginibre(std::size_t sample) {
  return {StateDescriptor::Kind::ginibre, {}, 0, sample};
}

SearchResult finish(std::uint64_t n, const ModulusPtr& modulus, const SearchConfig& config,
                    std::vector<TupleResult> per_tuple, std::size_t states) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < per_tuple.size(); ++i) {
    if (per_tuple[i].margin > per_tuple[best].margin) best = i;
  }
  SearchResult result;
  result.state = per_tuple[best].state;
  result.best = bell_check(modulus, per_tuple[best].tuple, realize(result.state, n, config));
  result.per_tuple = std::move(per_tuple);
  result.states_examined = states;
  return result;
}

}  // namespace

DensityMatrix realize(const StateDescriptor& state, std::size_t n, const SearchConfig& config) {
  if (state.kind == StateDescriptor::Kind::ginibre) {
    return DensityMatrix::diagonal(sample_diagonal(n, config, state.sample));
  }
  std::vector<double> d(n, 0.0);
  for (const auto& [idx, w] : state.support) {
    d.at(idx) = static_cast<double>(w) / static_cast<double>(state.grid);
  }
  return DensityMatrix::diagonal(std::move(d));
}

std::vector<std::vector<std::uint64_t>> candidate_tuples(const Modulus& modulus,
                                                         std::size_t max_tuple) {
  const std::vector<std::uint64_t> pool(modulus.divisors().begin() + 1, modulus.divisors().end());
  const std::uint64_t n = modulus.n();
  const bool boolean_lattice = std::all_of(pool.begin(), pool.end(), [n](std::uint64_t d) {
    return std::gcd(d, n / d) == 1;
  });

  auto admissible = [&](const std::vector<std::uint64_t>& t) {
    bool antichain_pair = false;
    for (std::size_t i = 0; i < t.size() && !antichain_pair; ++i) {
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        if (t[j] % t[i] != 0) {
          antichain_pair = true;
          break;
        }
      }
    }
    if (!antichain_pair) return false;
    if (boolean_lattice) return true;
    return std::any_of(t.begin(), t.end(), [n](std::uint64_t d) { return std::gcd(d, n / d) != 1; });
  };

  auto enumerate = [&](std::size_t min_size, bool filtered) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> current;
    for (std::size_t size = min_size; size <= std::min(max_tuple, pool.size()); ++size) {
      auto rec = [&](auto&& self, std::size_t start) -> void {
        if (current.size() == size) {
          if (!filtered || admissible(current)) out.push_back(current);
          return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
          current.push_back(pool[i]);
          self(self, i + 1);
          current.pop_back();
        }
      };
      rec(rec, 0);
    }
    return out;
  };

  auto tuples = enumerate(2, true);
  if (tuples.empty()) tuples = enumerate(1, false);
  return tuples;
}

std::vector<std::size_t> sector_representatives(const Modulus& modulus) {
  std::vector<std::size_t> reps;
  for (std::uint64_t m : modulus.divisors()) reps.push_back((modulus.n() / m) % modulus.n());
  std::sort(reps.begin(), reps.end());
  return reps;
}

SearchResult search_violation(std::uint64_t n, const SearchConfig& config) {
  validate_search(n, config);
  const ModulusPtr modulus = Modulus::make(n);
  const auto& divisors = modulus->divisors();
  const auto tuples = candidate_tuples(*modulus, config.max_tuple);
  const auto reps = sector_representatives(*modulus);

  // tau(d | state) for every divisor d, one row per state. Rows: grid vertices
  // (one per representative), then the Ginibre samples.
  const std::size_t n_states = reps.size() + config.samples;
  std::vector<double> table(n_states * divisors.size());
  std::vector<StateDescriptor> states(n_states);
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();

  const auto n_states_signed = static_cast<std::ptrdiff_t>(n_states);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t si = 0; si < n_states_signed; ++si) {
    const auto s = static_cast<std::size_t>(si);
    DensityMatrix rho = s < reps.size()
                            ? DensityMatrix::basis(n, reps[s])
                            : DensityMatrix::diagonal(sample_diagonal(n, config, s - reps.size()));
    states[s] = s < reps.size() ? vertex(reps[s], config.grid) : ginibre(s - reps.size());
    for (std::size_t di = 0; di < divisors.size(); ++di) {
      table[s * divisors.size() + di] = tau(divisors[di], rho);
    }
  }

  // The margin is affine in the diagonal of the state, so over the grid (the
  // convex combinations of representative basis states with weights k/grid)
  // its maximum is reached at a vertex, and a vertex is also the smallest
  // descriptor among equal margins. Only vertices need to be scored.
  std::vector<TupleResult> per_tuple(tuples.size());
  const auto n_tuples = static_cast<std::ptrdiff_t>(tuples.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t ti = 0; ti < n_tuples; ++ti) {
    const auto& t = tuples[static_cast<std::size_t>(ti)];
    std::vector<DivisorElement> xs;
    for (std::uint64_t m : t) xs.emplace_back(modulus, m);
    // Same shape with divisors replaced by their row positions.
    TupleShape shape = shape_of(xs);
    for (auto* v : {&shape.members, &shape.join_negs}) {
      for (auto& d : *v) d = modulus->index_of(d);
    }
    shape.r = modulus->index_of(shape.r);

    TupleResult best{t, 0.0, {}};
    bool have = false;
    for (std::size_t s = 0; s < n_states; ++s) {
      const double* row = &table[s * divisors.size()];
      const Sides sd = sides(shape, 0, [row](std::uint64_t i) { return row[i]; });
      const double margin = sd.lhs - sd.bound;
      if (!have || better(margin, states[s], best.margin, best.state)) {
        best.margin = margin;
        best.state = states[s];
        have = true;
      }
    }
    per_tuple[static_cast<std::size_t>(ti)] = std::move(best);
  }

  return finish(n, modulus, config, std::move(per_tuple), n_states);
}

SearchResult search_violation_reference(std::uint64_t n, const SearchConfig& config) {
  validate_search(n, config);
  const ModulusPtr modulus = Modulus::make(n);
  const auto tuples = candidate_tuples(*modulus, config.max_tuple);
  const auto reps = sector_representatives(*modulus);

  // Every grid state with at most three support points, then the samples.
  std::vector<StateDescriptor> states;
  const unsigned g = config.grid;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    states.push_back(vertex(reps[i], g));
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      for (unsigned wi = 1; wi < g; ++wi) {
        states.push_back({StateDescriptor::Kind::grid, {{reps[i], wi}, {reps[j], g - wi}}, g, 0});
      }
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      for (std::size_t k = j + 1; k < reps.size(); ++k) {
        for (unsigned wi = 1; wi < g; ++wi) {
          for (unsigned wj = 1; wi + wj < g; ++wj) {
            states.push_back({StateDescriptor::Kind::grid,
                              {{reps[i], wi}, {reps[j], wj}, {reps[k], g - wi - wj}},
                              g,
                              0});
          }
        }
      }
    }
  }
  for (std::size_t s = 0; s < config.samples; ++s) states.push_back(ginibre(s));

  std::vector<DensityMatrix> rhos;
  rhos.reserve(states.size());
  for (const auto& s : states) rhos.push_back(realize(s, n, config));

  std::vector<TupleResult> per_tuple;
  for (const auto& t : tuples) {
    TupleResult best{t, 0.0, {}};
    for (std::size_t s = 0; s < states.size(); ++s) {
      const double margin = bell_check(modulus, t, rhos[s]).margin;
      if (s == 0 || better(margin, states[s], best.margin, best.state)) {
        best.margin = margin;
        best.state = states[s];
      }
    }
    per_tuple.push_back(std::move(best));
  }
  return finish(n, modulus, config, std::move(per_tuple), states.size());
}

nlohmann::ordered_json SearchResult::to_json(const SearchConfig& config) const {
  nlohmann::ordered_json j = best.to_json();
  j["state"] = state.to_json();
  nlohmann::ordered_json s;
  s["seed"] = config.seed;
  s["grid"] = config.grid;
  s["samples"] = config.samples;
  s["max_tuple"] = config.max_tuple;
  s["ginibre_rank"] = config.ginibre_rank;
  s["tuples"] = per_tuple.size();
  s["states"] = states_examined;
  j["search"] = std::move(s);
  return j;
}

void SearchResult::write_csv(std::ostream& out) const {
  out << "tuple,margin,violated,state\n";
  const auto old_precision = out.precision(17);
  for (const auto& t : per_tuple) {
    for (std::size_t i = 0; i < t.tuple.size(); ++i) out << (i ? " " : "") << t.tuple[i];
    out << ',' << t.margin << ',' << (t.margin > kViolationThreshold ? "true" : "false") << ','
        << t.state.to_string() << '\n';
  }
  out.precision(old_precision);
}

}  // namespace heyting
