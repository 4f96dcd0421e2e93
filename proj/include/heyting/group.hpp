#pragma once

// Symbolic labels for the groups C(n) (positions) and their Pontryagin duals
// (momenta) indexed by supernatural numbers. No group arithmetic lives here.

#include <string>

#include "heyting/supernatural.hpp"

namespace heyting {

enum class GroupKind {
  cyclic_finite,      ///< Z(n), n natural (including the trivial Z(1))
  prufer,             ///< Q_p/Z_p
  direct_sum_prufer,  ///< (+)_{p in pi} Q_p/Z_p
  padic,              ///< Z_p
  product_padic,      ///< prod_{p in pi} Z_p
  mixed,              ///< finite cyclic part times an infinite part
};

struct GroupDescription {
  GroupKind kind = GroupKind::cyclic_finite;
  SupernaturalNumber finite_part;  ///< default 0, finite exponents only
  PrimeSet infinite_primes;
  bool dual = false;  ///< false: C(n), true: its dual

  /// ASCII rendering: `Z(900)`, `Q_2/Z_2`, `Z_2 x Z_3`, `Q_2/Z_2 (+) Q_3/Z_3`.
  std::string to_string() const;
  /// Same structure with the usual symbols, e.g. `Ẑ ≅ ∏_p Z_p`.
  std::string to_unicode() const;
};

GroupDescription describe_group(const SupernaturalNumber& n, bool dual);

const char* to_string(GroupKind kind);

}  // namespace heyting
