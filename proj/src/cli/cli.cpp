#include "symcap/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "symcap/acceptance.hpp"
#include "symcap/checks.hpp"
#include "symcap/errors.hpp"
#include "symcap/packing.hpp"
#include "symcap/profile.hpp"
#include "symcap/sampling.hpp"
#include "symcap/spectrum.hpp"
#include "symcap/svg.hpp"

namespace symcap::cli {

bool DomainSpec::finite() const {
  return std::none_of(params.begin(), params.end(), [](const ExtRational& a) { return a.is_infinite(); });
}

ToricDomain DomainSpec::domain() const {
  if (kind == ToricDomain::Kind::polytope) return ToricDomain::polytope(*polytope);
  require(finite(), "cylinder factors are supported by the spectral diameter only");
  std::vector<Rational> a;
  for (const ExtRational& x : params) a.push_back(x.finite());
  require(std::is_sorted(a.begin(), a.end()), "parameters must be sorted nondecreasing");
  return kind == ToricDomain::Kind::ellipsoid ? ToricDomain::ellipsoid(a) : ToricDomain::polydisk(a);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

DomainSpec parse_domain(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("domain must look like kind:params, got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  DomainSpec d;
  if (kind == "polytope") {
    d.kind = ToricDomain::Kind::polytope;
    d.polytope = polytope_from_json(read_json_file(std::string(rest)));
    return d;
  }
  std::vector<ExtRational> values;
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t comma = rest.find(',', start);
    if (comma == std::string_view::npos) comma = rest.size();
    values.push_back(parse_ext_rational(rest.substr(start, comma - start)));
    start = comma + 1;
  }
  if (kind == "ellipsoid") {
    d.kind = ToricDomain::Kind::ellipsoid;
  } else if (kind == "polydisk") {
    d.kind = ToricDomain::Kind::polydisk;
  } else if (kind == "ball") {
    if (values.size() != 2 || values[1].is_infinite() || !values[1].finite().is_integer())
      throw ParseError("ball expects capacity,dimension");
    std::int64_t n = to_int64(values[1].finite());
    require(n >= 1 && n <= 8, "ball dimension must lie in [1, 8]");
    d.kind = ToricDomain::Kind::ellipsoid;
    values.assign(static_cast<std::size_t>(n), values[0]);
  } else {
    throw ParseError("unknown domain kind '" + std::string(kind) + "'");
  }
  d.params = std::move(values);
  return d;
}

namespace {

struct Output {
  std::string format = "text";
  bool json = false;
  std::string file;
  std::vector<std::string> formats;
  CLI::Option* format_option = nullptr;

  // Without --format or --json the extension of --out picks the format.
  void resolve() {
    if (json || file.empty() || format_option->count() > 0) return;
    const std::size_t dot = file.rfind('.');
    if (dot == std::string::npos) return;
    const std::string ext = file.substr(dot + 1);
    if (std::find(formats.begin(), formats.end(), ext) != formats.end()) format = ext;
  }
};

void add_output(CLI::App* app, Output& o, const std::vector<std::string>& formats) {
  o.formats = formats;
  o.format_option = app->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  app->add_flag("--json", o.json, "shorthand for --format json");
  app->add_option("--out", o.file, "write output to FILE");
}

class Emitter {
 public:
  Emitter(Output& o, std::ostream& out) : o_(o), out_(out) { o.resolve(); }
  const std::string& format() const { return o_.json ? json_ : o_.format; }
  void operator()(const std::string& text) const {
    if (o_.file.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.file, std::ios::binary);
    if (!f) throw PreconditionError("cannot write " + o_.file);
    f << text;
  }

 private:
  const Output& o_;
  std::ostream& out_;
  std::string json_ = "json";
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string set_str(const std::vector<Rational>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "}";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render(const CapacityValue& v, const std::string& format) {
  if (format == "json") return dump(json(v));
  if (format == "csv") return "value,attained,provenance\n" + v.value.str() + "," + (v.attained ? "true" : "false") + "," +
                              csv_field(v.provenance) + "\n";
  return v.value.str() + "\n";
}

std::string render(const BoundReport& r, const std::string& format) {
  if (format == "json") return dump(json(r));
  std::ostringstream s;
  if (format == "csv") {
    s << "rule,anchor,value,expression\n";
    for (const BoundStep& st : r.steps)
      s << csv_field(st.rule) << "," << csv_field(st.anchor) << "," << st.value.str() << "," << csv_field(st.expression) << "\n";
    s << "lower,," << r.lower.str() << ",\nupper,," << r.upper.str() << ",\n";
    return s.str();
  }
  s << "lower " << r.lower.str() << "\nupper " << r.upper.str() << "\n";
  for (const BoundStep& st : r.steps) s << "  " << st.rule << " [" << st.anchor << "]: " << st.expression << "\n";
  return s.str();
}

std::string render(const PackingCertificate& c, const std::string& format) {
  if (format == "json") return dump(json(c));
  if (format == "svg") return render_moment(c.domain.polytope(), c.simplices, "a + b = " + c.total.str());
  std::ostringstream s;
  s << "total " << c.total.str() << "\nverified " << (c.verified ? "true" : "false") << "\nprovenance " << c.provenance
    << "\n";
  for (const SimplexImage& si : c.simplices) {
    s << "simplex " << si.capacity().str() << ":";
    for (const Vector& v : simplex_vertices(si)) {
      s << " (";
      for (Index i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v(i).str();
      s << ")";
    }
    s << "\n";
  }
  return s.str();
}

std::string render_orbits_csv(const SpectrumReport& r) {
  std::ostringstream s;
  s << "kind,lo,hi,winding,recapping,action,source\n";
  for (const OrbitRecord& o : r.orbits)
    s << to_string(o.locus.kind) << "," << o.locus.lo.str() << "," << (o.locus.hi ? o.locus.hi->str() : "") << ","
      << o.winding << "," << o.recapping << "," << o.action.str() << "," << o.source << "\n";
  return s.str();
}

Rational need(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string("missing ") + flag);
  return parse_rational(value);
}

SearchConfig search_config(const std::string& eps, int bound, int grid, bool equal) {
  SearchConfig cfg;
  cfg.matrix_entry_bound = bound;
  cfg.translation_grid = grid;
  cfg.bisection_tolerance = parse_rational(eps);
  cfg.equal_balls = equal;
  require(bound >= 0 && grid >= 1, "matrix bound must be >= 0 and grid >= 1");
  require(cfg.bisection_tolerance > Rational(0), "epsilon must be positive");
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact capacities, packings and action spectra of toric domains", "symcap"};
  app.require_subcommand(1);

  // cap
  Output cap_out;
  std::string cap_domain, cap_kind = "spectral-diameter", cap_eps = "1/100";
  int cap_bound = 2, cap_grid = 20;
  auto* cap = app.add_subcommand("cap", "capacity of a toric domain");
  cap->add_option("--domain", cap_domain, "ellipsoid:a1,...|polydisk:a1,...|ball:a,n|polytope:FILE")->required();
  cap->add_option("--capacity", cap_kind)->check(CLI::IsMember({"spectral-diameter", "c2b", "gromov-width", "bounds"}));
  cap->add_option("--epsilon", cap_eps, "search tolerance for bounds");
  cap->add_option("--matrix-bound", cap_bound);
  cap->add_option("--grid", cap_grid);
  add_output(cap, cap_out, {"text", "json", "csv"});

  // pack
  Output pack_out;
  std::string pack_domain, pack_eps = "1/100";
  int pack_bound = 2, pack_grid = 20;
  bool pack_canonical = false, pack_equal = false;
  auto* pack = app.add_subcommand("pack", "two-ball packing certificate");
  pack->add_option("--domain", pack_domain)->required();
  pack->add_option("--epsilon", pack_eps, "bisection tolerance, or slack with --canonical");
  pack->add_option("--matrix-bound", pack_bound);
  pack->add_option("--grid", pack_grid);
  pack->add_flag("--canonical", pack_canonical, "closed-form certificate instead of the search");
  pack->add_flag("--equal-balls", pack_equal);
  add_output(pack, pack_out, {"text", "json", "svg"});

  // spectrum
  Output spec_out;
  std::string spec_profile, spec_space = "cn:1";
  int spec_recap = 0;
  bool spec_shift = false, spec_norm = false, spec_orbits = false, spec_negate = false;
  auto* spectrum = app.add_subcommand("spectrum", "action spectrum of a radial profile");
  spectrum->add_option("--profile", spec_profile, "name:key=value,...")->required();
  spectrum->add_option("--space", spec_space, "cn:N or cpn:N");
  spectrum->add_option("--recap", spec_recap, "recapping window K")->check(CLI::NonNegativeNumber);
  spectrum->add_flag("--shift", spec_shift, "fold in the normalization constant");
  spectrum->add_flag("--negate", spec_negate, "spectrum of the inverse system");
  spectrum->add_flag("--norm", spec_norm, "spectral norm candidates");
  spectrum->add_flag("--orbits", spec_orbits, "list orbits in text output");
  add_output(spectrum, spec_out, {"text", "json", "csv"});

  // check
  Output check_out;
  std::string check_name, ck_s, ck_delta, ck_a, ck_eps, ck_sigmas, ck_samples = "0,1/2,1", ck_energy, ck_file;
  int ck_grid = 200, ck_recap = 1, ck_dim = 1;
  auto* check = app.add_subcommand("check", "run one verification");
  check
      ->add_option("name", check_name)
      ->required()
      ->check(CLI::IsMember({"max-action", "reeb-law", "deformation", "a2", "ball-chain", "displacement", "cylinder",
                             "ball-bracket", "special-ball", "cpn-bracket", "certificate"}));
  check->add_option("--s", ck_s);
  check->add_option("--delta", ck_delta);
  check->add_option("--a", ck_a);
  check->add_option("--epsilon", ck_eps);
  check->add_option("--sigmas", ck_sigmas);
  check->add_option("--samples", ck_samples);
  check->add_option("--energy", ck_energy);
  check->add_option("--file", ck_file);
  check->add_option("--grid", ck_grid);
  check->add_option("--recap", ck_recap);
  check->add_option("--dim", ck_dim);
  add_output(check, check_out, {"text", "json", "csv"});

  // plot
  Output plot_out;
  plot_out.format = "svg";
  std::string plot_kind, pl_domain, pl_cert, pl_eps = "1/100", pl_profile, pl_space = "cn:1", pl_a, pl_samples = "0,1/2,1";
  bool pl_canonical = false, pl_search = false;
  auto* plot = app.add_subcommand("plot", "SVG of a moment image, profile or deformation");
  plot->add_option("kind", plot_kind)->required()->check(CLI::IsMember({"moment", "profile", "deformation"}));
  plot->add_option("--domain", pl_domain);
  plot->add_option("--certificate", pl_cert, "certificate JSON to draw");
  plot->add_flag("--canonical", pl_canonical);
  plot->add_flag("--search", pl_search);
  plot->add_option("--epsilon", pl_eps);
  plot->add_option("--profile", pl_profile);
  plot->add_option("--space", pl_space);
  plot->add_option("--a", pl_a);
  plot->add_option("--samples", pl_samples);
  add_output(plot, plot_out, {"svg"});

  // verify
  Output verify_out;
  std::string verify_target;
  std::optional<unsigned> verify_seed;
  auto* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("target", verify_target)->check(CLI::IsMember({"paper"}));
  verify->add_option("--seed", verify_seed, "overrides SYMCAP_SEED");
  add_output(verify, verify_out, {"text", "json"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  }

  try {
    if (*cap) {
      Emitter emit(cap_out, out);
      DomainSpec d = parse_domain(cap_domain);
      if (cap_kind == "spectral-diameter") {
        if (d.kind == ToricDomain::Kind::polytope) spectral_diameter(d.domain());  // throws: no closed form
        emit(render(d.kind == ToricDomain::Kind::ellipsoid ? spectral_diameter_ellipsoid(d.params)
                                                           : spectral_diameter_polydisk(d.params),
                    emit.format()));
      } else if (cap_kind == "c2b") {
        emit(render(c2b_closed_form(d.domain()), emit.format()));
      } else if (cap_kind == "gromov-width") {
        ToricDomain dom = d.domain();
        require(dom.kind() != ToricDomain::Kind::polytope, "no closed form for the gromov width of a general polytope");
        CapacityValue v = gromov_width_simplex_preimage(dom.params().front());
        v.provenance = "gromov width a_1";
        emit(render(v, emit.format()));
      } else {
        ToricDomain dom = d.domain();
        SearchConfig cfg = search_config(cap_eps, cap_bound, cap_grid, false);
        if (dom.kind() == ToricDomain::Kind::polytope) {
          emit(render(polytope_capacity_bounds(dom, cfg), emit.format()));
        } else {
          BoundReport r;
          auto cert = dom.dimension() >= 2 ? search_two_balls(dom, cfg) : std::nullopt;
          r.lower = cert ? cert->total : Rational(0);
          r.upper = spectral_diameter(dom).value;
          r.steps.push_back({"a + b <= c_2B", cert ? "two-ball search certificate" : "no placement found", r.lower,
                             r.lower.str()});
          r.steps.push_back({"closed form", spectral_diameter(dom).provenance, r.upper, r.upper.str()});
          emit(render(r, emit.format()));
        }
      }
      return exit_ok;
    }

    if (*pack) {
      Emitter emit(pack_out, out);
      ToricDomain dom = parse_domain(pack_domain).domain();
      if (pack_canonical) {
        emit(render(canonical_certificate(dom, parse_rational(pack_eps)), emit.format()));
        return exit_ok;
      }
      auto cert = search_two_balls(dom, search_config(pack_eps, pack_bound, pack_grid, pack_equal));
      if (!cert) {
        err << "no placement found within the search bounds\n";
        return exit_failed;
      }
      emit(render(*cert, emit.format()));
      return exit_ok;
    }

    if (*spectrum) {
      Emitter emit(spec_out, out);
      ImplantedSystem sys = build_profile(parse_profile_spec(spec_profile), parse_space(spec_space));
      SpectrumReport r = spec_negate ? negate_spectrum(sys, spec_recap) : action_spectrum(sys, spec_recap, spec_shift);
      std::optional<NormCandidates> nc;
      if (spec_norm) {
        SpectrumReport fwd = action_spectrum(sys, spec_recap);
        nc = spectral_norm_candidates(fwd, negate_spectrum(sys, spec_recap));
      }
      if (emit.format() == "json") {
        if (!nc) {
          emit(dump(json(r)));
        } else {
          emit(dump(json{{"report", r}, {"norm", *nc}}));
        }
      } else if (emit.format() == "csv") {
        emit(render_orbits_csv(r));
      } else {
        std::string s = set_str(r.spectrum) + "\n";
        if (spec_orbits && r.space.kind == Space::Kind::cpn)
          s += "normalization shift " + r.normalization_shift.str() + (r.shift_applied ? " (applied)" : "") + "\n";
        if (spec_orbits)
          for (const OrbitRecord& o : r.orbits)
            s += "  " + std::string(to_string(o.locus.kind)) + " " + o.locus.lo.str() +
                 (o.locus.hi ? ".." + o.locus.hi->str() : std::string(o.locus.kind == LocusKind::plateau ? "..inf" : "")) +
                 " winding " + std::to_string(o.winding) + " recapping " + std::to_string(o.recapping) + " action " +
                 o.action.str() + "\n";
        if (nc) s += "candidates " + set_str(nc->candidates) + "\nselected " + nc->selected.str() + "\n";
        emit(s);
      }
      return exit_ok;
    }

    if (*check) {
      Emitter emit(check_out, out);
      json j;
      bool ok = true;
      std::string text;
      if (check_name == "max-action") {
        auto c = max_action_check(need(ck_s, "--s"), need(ck_delta, "--delta"));
        ok = c.ok;
        j = {{"max_action", c.max_action.str()}, {"bound", c.bound.str()}, {"ok", c.ok}};
        text = "max action " + c.max_action.str() + " <= " + c.bound.str() + (ok ? " ok\n" : " FAILED\n");
      } else if (check_name == "reeb-law") {
        if (ck_sigmas.empty()) throw ParseError("missing --sigmas");
        auto c = reeb_slope_law(parse_rational_list(ck_sigmas), need(ck_delta, "--delta"));
        ok = c.ok();
        json acts = json::array();
        for (const Rational& a : c.actions) acts.push_back(a.str());
        j = {{"actions", acts}, {"singletons", c.singletons}, {"affine_law", c.affine_law}, {"ok", ok}};
        text = "actions " + set_str(c.actions) + (ok ? " ok\n" : " FAILED\n");
      } else if (check_name == "deformation") {
        auto c = deformation_family_check(need(ck_a, "--a"), need(ck_eps, "--epsilon"), parse_rational_list(ck_samples), ck_grid);
        ok = c.ok();
        j = {{"points", c.points},         {"agrees_on_region", c.agrees_on_region}, {"monotone_in_s", c.monotone_in_s},
             {"t0_close", c.t0_close},     {"t1_is_ka", c.t1_is_ka},                 {"failures", c.failures},
             {"ok", ok}};
        text = std::to_string(c.points) + " points" + (ok ? " ok\n" : " FAILED\n");
        for (const std::string& f : c.failures) text += "  " + f + "\n";
      } else if (check_name == "a2") {
        Rational res = lemma_a2_residual(need(ck_a, "--a"), ck_recap);
        ok = res.is_zero();
        j = {{"residual", res.str()}, {"ok", ok}};
        text = "residual " + res.str() + "\n";
      } else if (check_name == "special-ball") {
        auto v = special_ball_values(need(ck_a, "--a"), ck_dim);
        j = {{"capacity", v.capacity.str()},
             {"spectral_diameter", v.spectral_diameter.str()},
             {"max_critical", v.max_critical.str()},
             {"min_critical", v.min_critical.str()}};
        text = "capacity " + v.capacity.str() + "\nspectral diameter " + v.spectral_diameter.str() + "\ncriticals " +
               set_str({v.min_critical, v.max_critical}) + "\n";
      } else if (check_name == "certificate") {
        if (ck_file.empty()) throw ParseError("missing --file");
        PackingCertificate c = certificate_from_json(read_json_file(ck_file));
        ok = verify_certificate(c);
        j = {{"verified", ok}, {"total", c.total.str()}};
        text = std::string("verified ") + (ok ? "true" : "false") + "\ntotal " + c.total.str() + "\n";
      } else if (check_name == "cylinder") {
        Rational d = need(ck_delta, "--delta");
        BoundReport r = cylinder_report({d});
        if (emit.format() != "text") {
          emit(render(r, emit.format()));
          return exit_ok;
        }
        text = cylinder_upper_bound(d).str() + "\ninfimum " + r.upper.str() + "\n";
      } else {
        BoundReport r;
        if (check_name == "ball-chain") r = compose_ball_bound(need(ck_s, "--s"), need(ck_delta, "--delta"));
        else if (check_name == "displacement") r = displacement_bounds(need(ck_energy, "--energy"));
        else if (check_name == "ball-bracket") r = ball_displacement_bracket(need(ck_eps, "--epsilon"), need(ck_delta, "--delta"));
        else r = cpn_two_ball_bracket(ck_dim, need(ck_eps, "--epsilon"));
        emit(render(r, emit.format()));
        return exit_ok;
      }
      if (emit.format() == "json") emit(dump(j));
      else if (emit.format() == "csv") {
        std::string head, row;
        for (const auto& [k, v] : j.items()) {
          head += (head.empty() ? "" : ",") + k;
          row += (row.empty() ? "" : ",") + csv_field(v.is_string() ? v.get<std::string>() : v.dump());
        }
        emit(head + "\n" + row + "\n");
      } else
        emit(text);
      return ok ? exit_ok : exit_failed;
    }

    if (*plot) {
      Emitter emit(plot_out, out);
      if (plot_kind == "moment") {
        std::vector<SimplexImage> simplices;
        std::string title;
        std::optional<Polytope> p;
        if (!pl_cert.empty()) {
          PackingCertificate c = certificate_from_json(read_json_file(pl_cert));
          simplices = c.simplices;
          p = c.domain.polytope();
          title = "a + b = " + c.total.str();
        } else {
          if (pl_domain.empty()) throw ParseError("missing --domain or --certificate");
          ToricDomain dom = parse_domain(pl_domain).domain();
          p = dom.polytope();
          title = pl_domain;
          std::optional<PackingCertificate> c;
          if (pl_canonical) c = canonical_certificate(dom, parse_rational(pl_eps));
          else if (pl_search) c = search_two_balls(dom, search_config(pl_eps, 2, 20, false));
          if (c) {
            simplices = c->simplices;
            title += ", a + b = " + c->total.str();
          }
        }
        emit(render_moment(*p, simplices, title));
      } else if (plot_kind == "profile") {
        if (pl_profile.empty()) throw ParseError("missing --profile");
        ImplantedSystem sys = build_profile(parse_profile_spec(pl_profile), parse_space(pl_space));
        const RadialProfile& first = sys.implants.front();
        emit(render_profile(first, find_orbits(first)));
      } else {
        emit(render_deformation(need(pl_a, "--a"), need(pl_eps, "--epsilon"), parse_rational_list(pl_samples)));
      }
      return exit_ok;
    }

    if (*verify) {
      Emitter emit(verify_out, out);
      SuiteResult r = run_acceptance(verify_seed.value_or(sampling_seed()));
      emit(emit.format() == "json" ? dump(json(r)) : render_table(r));
      return r.ok() ? exit_ok : exit_failed;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return exit_precondition;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_internal;
}

}  // namespace symcap::cli
