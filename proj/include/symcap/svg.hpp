#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "symcap/capacities.hpp"
#include "symcap/packing.hpp"
#include "symcap/profile.hpp"
#include "symcap/spectrum.hpp"

namespace symcap {

/// Minimal SVG writer. Coordinates are data units mapped into a fixed
/// viewport; every number is printed with "%.4f".
class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width = 480, int height = 400);

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, const std::string& stroke,
               double opacity = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, bool dashed = false);
  void line(double x0, double y0, double x1, double y1, const std::string& stroke, bool dashed = false);
  void dot(double x, double y, const std::string& fill);
  void text(double x, double y, const std::string& label, int dx = 4, int dy = -4);
  void axes();
  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;

  double xmin_, xmax_, ymin_, ymax_;
  int width_, height_;
  std::ostringstream body_;
};

/// "≈0.9900"
std::string approx_label(const Rational& r);

/// Two-dimensional moment polytope with an optional packing drawn in.
std::string render_moment(const Polytope& p, const std::vector<SimplexImage>& simplices, const std::string& title);
/// Graph of the profile with the tangent lines whose intercepts are the actions.
std::string render_profile(const RadialProfile& p, const std::vector<OrbitRecord>& orbits);
/// K_a and T_s for each sample s, with the level -eps marked.
std::string render_deformation(const Rational& a, const Rational& eps, const std::vector<Rational>& s_samples);

}  // namespace symcap
