#pragma once

#include <vector>

#include "symcap/linalg.hpp"
#include "symcap/profile.hpp"

// Brute-force cross-checks kept apart from the exact code paths.
namespace symcap::oracle {

struct ScanRoot {
  double r;
  long winding;
};

struct ScanRun {
  double lo, hi;
  long winding;
};

struct ScanResult {
  std::vector<ScanRoot> roots;
  std::vector<ScanRun> runs;
};

/// Samples h' on a step grid over the domain (C^n: up to one past the last
/// knot) in double precision and reports, for each integer k in range,
/// sign changes of h' - k refined by bisection to `tol`, plus runs where
/// h' - k vanishes.
ScanResult scan_integer_slopes(const RadialProfile& p, double step = 1e-4, double tol = 1e-9);

/// Double-precision tangent intercept h(r) - r h'(r).
double intercept(const RadialProfile& p, double r);

/// Barycentric test: the open hulls meet iff some point is a strictly
/// positive convex combination of both vertex sets.
bool open_hulls_intersect(const std::vector<Vector>& a, const std::vector<Vector>& b);

}  // namespace symcap::oracle
