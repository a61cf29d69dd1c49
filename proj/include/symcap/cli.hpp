#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symcap/capacities.hpp"
#include "symcap/geometry.hpp"

namespace symcap::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;  // a check or the acceptance suite failed
inline constexpr int exit_parse = 2;
inline constexpr int exit_precondition = 3;
inline constexpr int exit_internal = 4;

/// "ellipsoid:1,2,inf", "polydisk:1/2,3", "ball:1,2" (capacity, dimension),
/// "polytope:<file>" with a polytope JSON document.
struct DomainSpec {
  ToricDomain::Kind kind = ToricDomain::Kind::ellipsoid;
  std::vector<ExtRational> params;
  std::optional<Polytope> polytope;

  bool finite() const;
  /// Throws PreconditionError for cylinder factors.
  ToricDomain domain() const;
};

DomainSpec parse_domain(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);

/// argv without the program name. Output goes to `out` unless --out names
/// a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symcap::cli
