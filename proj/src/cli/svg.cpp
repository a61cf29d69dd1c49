#include "symcap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

const char* palette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb"};

}  // namespace

SvgCanvas::SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width, int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width), height_(height) {
  require(xmax > xmin && ymax > ymin, "empty plot window");
}

double SvgCanvas::px(double x) const { return 40.0 + (x - xmin_) / (xmax_ - xmin_) * (width_ - 80); }
double SvgCanvas::py(double y) const { return height_ - 40.0 - (y - ymin_) / (ymax_ - ymin_) * (height_ - 80); }

void SvgCanvas::polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                        const std::string& stroke, double opacity) {
  body_ << "<polygon points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(px(pts[i].first)) << "," << num(py(pts[i].second));
  body_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << num(opacity) << "\" stroke=\"" << stroke << "\"/>\n";
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, bool dashed) {
  body_ << "<polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(px(pts[i].first)) << "," << num(py(pts[i].second));
  body_ << "\" fill=\"none\" stroke=\"" << stroke << "\"" << (dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
}

void SvgCanvas::line(double x0, double y0, double x1, double y1, const std::string& stroke, bool dashed) {
  body_ << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\"" << num(px(x1)) << "\" y2=\""
        << num(py(y1)) << "\" stroke=\"" << stroke << "\"" << (dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
}

void SvgCanvas::dot(double x, double y, const std::string& fill) {
  body_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2.5000\" fill=\"" << fill << "\"/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& label, int dx, int dy) {
  body_ << "<text x=\"" << num(px(x) + dx) << "\" y=\"" << num(py(y) + dy)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(label) << "</text>\n";
}

void SvgCanvas::axes() {
  const double x0 = std::clamp(0.0, xmin_, xmax_);
  const double y0 = std::clamp(0.0, ymin_, ymax_);
  line(xmin_, y0, xmax_, y0, "#000000");
  line(x0, ymin_, x0, ymax_, "#000000");
}

std::string SvgCanvas::str() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_ << "\" viewBox=\"0 0 "
      << width_ << " " << height_ << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out << body_.str() << "</svg>\n";
  return out.str();
}

std::string approx_label(const Rational& r) { return "≈" + num(r.to_double()); }

std::string render_moment(const Polytope& p, const std::vector<SimplexImage>& simplices, const std::string& title) {
  require(p.dimension() == 2, "moment plots need a two-dimensional polytope");
  auto box = bounding_box(p);
  require(box.has_value(), "polytope must be bounded");
  auto to_xy = [](const Vector& v) { return std::pair{v(0).to_double(), v(1).to_double()}; };
  // angular order around the vertex mean
  auto ordered = [&](std::vector<Vector> vs) {
    double cx = 0, cy = 0;
    for (const Vector& v : vs) {
      cx += v(0).to_double() / static_cast<double>(vs.size());
      cy += v(1).to_double() / static_cast<double>(vs.size());
    }
    std::vector<std::pair<double, double>> pts;
    for (const Vector& v : vs) pts.push_back(to_xy(v));
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
      return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
    return pts;
  };
  const double w = std::max(box->hi(0).to_double(), 1e-9);
  const double h = std::max(box->hi(1).to_double(), 1e-9);
  const double span = std::max(w, h) * 1.1;
  SvgCanvas c(std::min(0.0, box->lo(0).to_double()) - 0.05 * span, span, std::min(0.0, box->lo(1).to_double()) - 0.05 * span,
              span);
  c.axes();
  auto verts = vertices(p);
  c.polygon(ordered(verts), "#eeeeee", "#000000");
  for (const Vector& v : verts) c.text(v(0).to_double(), v(1).to_double(), "(" + v(0).str() + ", " + v(1).str() + ")");
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto& s = simplices[i];
    auto sv = simplex_vertices(s);
    c.polygon(ordered(sv), palette[i % 7], palette[i % 7], 0.5);
    double cx = 0, cy = 0;
    for (const Vector& v : sv) {
      cx += v(0).to_double() / 3;
      cy += v(1).to_double() / 3;
    }
    c.text(cx, cy, "a = " + approx_label(s.capacity()), -20, 4);
  }
  c.text(0, span, title, 0, 12);
  return c.str();
}

std::string render_profile(const RadialProfile& p, const std::vector<OrbitRecord>& orbits) {
  const auto& knots = p.function().knots();
  double hi = p.space().domain_hi() ? 1.0 : (knots.empty() ? 1.0 : knots.back().to_double() * 1.25 + 0.25);
  std::vector<std::pair<double, double>> graph;
  const int samples = 400;
  double ymin = 0, ymax = 0;
  for (int i = 0; i <= samples; ++i) {
    Rational r = Rational(i, samples) * Rational(static_cast<std::int64_t>(std::llround(hi * 10000)), 10000);
    double y = p(r).to_double();
    graph.push_back({r.to_double(), y});
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  for (const OrbitRecord& o : orbits) {
    ymin = std::min(ymin, o.action.to_double());
    ymax = std::max(ymax, o.action.to_double());
  }
  const double pad = std::max(0.1, (ymax - ymin) * 0.1);
  SvgCanvas c(-0.05 * hi, hi, ymin - pad, ymax + pad);
  c.axes();
  c.polyline(graph, "#4477aa");
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const OrbitRecord& o = orbits[i];
    if (o.recapping != 0) continue;
    const double r = o.locus.lo.to_double();
    const Rational at = o.locus.lo;
    c.line(0, o.action.to_double(), r, p(at).to_double(), "#ee6677", true);
    c.dot(0, o.action.to_double(), "#ee6677");
    c.dot(r, p(at).to_double(), "#228833");
    c.text(0, o.action.to_double(), "k=" + std::to_string(o.winding) + " " + approx_label(o.action));
  }
  c.text(-0.05 * hi, ymax + pad, p.label(), 0, 12);
  return c.str();
}

std::string render_deformation(const Rational& a, const Rational& eps, const std::vector<Rational>& s_samples) {
  const int samples = 200;
  SvgCanvas c(-0.05, 1.0, -a.to_double() - 0.1, 0.1 + 0.05);
  c.axes();
  auto trace = [&](const RadialProfile& p) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= samples; ++i) {
      Rational x(i, samples);
      pts.push_back({x.to_double(), p(x).to_double()});
    }
    return pts;
  };
  c.polyline(trace(k_a(a)), "#000000");
  for (std::size_t i = 0; i < s_samples.size(); ++i) {
    auto t = t_s(a, eps, s_samples[i]);
    c.polyline(trace(t), palette[i % 7], true);
    c.text(0, t(0).to_double(), "s = " + s_samples[i].str(), 4, 12);
  }
  c.line(0, -eps.to_double(), 1, -eps.to_double(), "#bbbbbb", true);
  c.text(1, -eps.to_double(), "-eps " + approx_label(-eps), -80, -4);
  c.text(-0.05, 0.15, "K_a and T_s, a = " + a.str() + ", eps = " + eps.str(), 0, 12);
  return c.str();
}

}  // namespace symcap
