#pragma once

// Catalog of the bracket identities used by the controllability arguments for
// d = 1, d = 2 and d >= 3, each checked by exact symbolic evaluation over all
// admissible index choices.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace landflow {

struct IdentityResult {
  std::string label;
  /// ASCII rendering of the identity as displayed, indices cyclic mod d.
  std::string statement;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// True when the identity holds as displayed for every instance.
  bool holds = false;
  /// Set when the displayed form is known to be wrong; describes the fix.
  std::optional<std::string> erratum;
  /// Result for the corrected form (equals `holds` without an erratum).
  bool corrected_holds = false;
  /// First failing instance, "lhs | expected" in canonical field text.
  std::string detail;
};

/// d = 1, d = 2 (checked in the complex and the real representation) or any
/// d >= 3.
std::vector<IdentityResult> check_displayed_identities(std::size_t d);

}  // namespace landflow
