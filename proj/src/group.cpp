#include "heyting/group.hpp"

#include <vector>

namespace heyting {

namespace {

struct Notation {
  const char* direct_sum;  // binary
  const char* product;     // binary
  const char* big_sum;
  const char* big_product;
  const char* not_in;
  const char* zhat;
  const char* iso;
};

constexpr Notation kAscii{" (+) ", " x ", "(+)", "prod", " not in ", "Zhat", " = "};
constexpr Notation kUnicode{" ⊕ ", " × ", "⊕", "∏", " ∉ ", "Ẑ", " ≅ "};

std::string infinite_part(const PrimeSet& primes, bool dual, const Notation& nt, bool& compound) {
  compound = false;
  if (primes.is_all()) {
    compound = true;
    if (dual) return std::string(nt.zhat) + nt.iso + nt.big_product + "_p Z_p";
    return std::string("Q/Z") + nt.iso + nt.big_sum + "_p Q_p/Z_p";
  }
  if (!primes.is_finite()) {
    compound = true;
    const std::string range = std::string("_{p") + nt.not_in + (~primes).to_string() + "}";
    if (dual) return std::string(nt.big_product) + range + " Z_p";
    return std::string(nt.big_sum) + range + " Q_p/Z_p";
  }
  std::string out;
  for (Prime p : primes.exceptions()) {
    if (!out.empty()) out += dual ? nt.product : nt.direct_sum;
    const std::string ps = std::to_string(p);
    out += dual ? "Z_" + ps : "Q_" + ps + "/Z_" + ps;
  }
  compound = primes.exceptions().size() > 1;
  return out;
}

std::string render(const GroupDescription& g, const Notation& nt) {
  const std::string cyclic = "Z(" + g.finite_part.to_string() + ")";
  if (g.kind == GroupKind::cyclic_finite) return cyclic;
  bool compound = false;
  const std::string inf = infinite_part(g.infinite_primes, g.dual, nt, compound);
  if (g.kind != GroupKind::mixed) return inf;
  return cyclic + nt.product + (compound ? "(" + inf + ")" : inf);
}

}  // namespace

GroupDescription describe_group(const SupernaturalNumber& n, bool dual) {
  GroupDescription g;
  g.dual = dual;
  std::map<Prime, Exponent> finite;
  for (const auto& [p, e] : n.exceptions()) {
    if (e != 0 && e != kInfinite) finite.emplace(p, e);
  }
  g.finite_part = SupernaturalNumber(0, std::move(finite));
  g.infinite_primes = varpi_partition(n).infinite;

  const bool has_finite = g.finite_part != SupernaturalNumber::one();
  const auto& inf = g.infinite_primes;
  if (inf.empty()) {
    g.kind = GroupKind::cyclic_finite;
  } else if (has_finite) {
    g.kind = GroupKind::mixed;
  } else if (inf.is_finite() && inf.exceptions().size() == 1) {
    g.kind = dual ? GroupKind::padic : GroupKind::prufer;
  } else {
    g.kind = dual ? GroupKind::product_padic : GroupKind::direct_sum_prufer;
  }
  return g;
}

std::string GroupDescription::to_string() const { return render(*this, kAscii); }

std::string GroupDescription::to_unicode() const { return render(*this, kUnicode); }

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::cyclic_finite: return "cyclic_finite";
    case GroupKind::prufer: return "prufer";
    case GroupKind::direct_sum_prufer: return "direct_sum_prufer";
    case GroupKind::padic: return "padic";
    case GroupKind::product_padic: return "product_padic";
    case GroupKind::mixed: return "mixed";
  }
  return "?";
}

}  // namespace heyting
