#include "multipole/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "multipole/approx.hpp"
#include "multipole/error.hpp"
#include "multipole/harmonic.hpp"
#include "multipole/json_io.hpp"
#include "multipole/quadrature.hpp"

namespace multipole {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

Json parse_inline(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(what + ": " + e.what());
  }
}

// Integers that fit in 64 bits stay numbers, larger ones become strings.
Json bigint_to_json(const BigInt& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
  return n.str();
}

struct Settings {
  std::string quadric = "sphere";
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string output;
};

// {"quadric", "tolerances": {"div", "fact", "harm", "eps_cluster", "disc"}, "seed", "output"}
void apply_config(const Json& j, Settings& s) {
  if (!j.is_object()) bad("config must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "quadric") {
      if (v.is_string()) {
        s.quadric = v.get<std::string>();
      } else {
        bad("config \"quadric\" must be a preset name or a file path");
      }
    } else if (key == "tolerances") {
      if (!v.is_object()) bad("config \"tolerances\" must be an object");
      for (auto t = v.begin(); t != v.end(); ++t) {
        if (!t.value().is_number()) bad("tolerance \"" + t.key() + "\" must be a number");
        const double x = t.value().get<double>();
        if (t.key() == "div") {
          s.tol.div = x;
        } else if (t.key() == "fact") {
          s.tol.fact = x;
        } else if (t.key() == "harm") {
          s.tol.harm = x;
        } else if (t.key() == "eps_cluster") {
          s.tol.eps_cluster = x;
        } else if (t.key() == "disc") {
          s.tol.disc = x;
        } else {
          bad("unknown tolerance \"" + t.key() + "\"");
        }
      }
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) bad("config \"seed\" must be a nonnegative integer");
      s.seed = v.get<std::uint64_t>();
    } else if (key == "output") {
      if (!v.is_string()) bad("config \"output\" must be a path");
      s.output = v.get<std::string>();
    } else {
      bad("unknown config key \"" + key + "\"");
    }
  }
}

QuadForm load_quadric(const std::string& name, const Tolerances& tol) {
  if (name == "sphere") return QuadForm::sphere();
  if (name == "hyperboloid") return QuadForm::hyperboloid();
  const Json j = read_json_file(name);
  const QuadForm q = quadform_from_json(j);
  return QuadForm(q.matrix(), tol.det);
}

Strategy parse_strategy(const std::string& s) {
  if (s == "canonical") return Strategy::Canonical;
  if (s == "enumerate") return Strategy::Enumerate;
  if (s == "real-unique") return Strategy::RealUnique;
  return Strategy::Real;
}

std::vector<Vec3> parse_vectors(const std::string& text) {
  const Json j = parse_inline("[" + text + "]", "--vectors");
  std::vector<Vec3> out;
  for (const Json& v : j) out.push_back(vec3_from_json(v));
  return out;
}

const std::vector<std::string> kStrategies{"canonical", "enumerate", "real-unique", "real"};

// Built-in sample functions for `approx`.
std::optional<SurfaceFunction> builtin_function(const std::string& name) {
  if (name == "exp_x") return SurfaceFunction([](const Vec3& v) { return std::exp(v[0]); });
  if (name == "gauss") {
    // Bump centred on the +z pole: exp(-|v - e_z|^2).
    return SurfaceFunction([](const Vec3& v) {
      const cd dz = v[2] - 1.0;
      return std::exp(-(v[0] * v[0] + v[1] * v[1] + dz * dz));
    });
  }
  return std::nullopt;
}

struct Commands {
  CLI::App* decompose;
  CLI::App* harmonic;
  CLI::App* maxwell;
  CLI::App* fibers;
  CLI::App* discriminant;
  CLI::App* planar_fiber;
  CLI::App* approx;
  CLI::App* counts;
  CLI::App* gap;
  CLI::App* random_poly;
};

struct Args {
  std::string input;
  bool surface = false;
  bool cone = false;
  bool all = false;
  std::string strategy = "canonical";
  std::size_t limit = 1000;
  std::string vectors;
  bool invert = false;
  std::string center;
  std::string points;
  std::string function;
  int d_max = 0;
  int rule_degree = -1;
  std::string series = "auto";
  int d = 0;
  int l = 0;
  std::vector<int> degrees;
  bool real = false;
  bool homogeneous = false;
};

Json cmd_decompose(const Args& a, const QuadForm& q, const Tolerances& tol) {
  const Json in = read_json_file(a.input);
  const Strategy strategy = parse_strategy(a.strategy);
  if (a.cone) {
    const HomogPoly p = homog_from_json(in);
    const bool real = strategy == Strategy::RealUnique || strategy == Strategy::Real;
    if (a.all || strategy == Strategy::Enumerate) {
      const auto fs = real ? real_factorizations(p, q, tol) : all_factorizations(p, q, tol);
      Json list = Json::array();
      for (const auto& f : fs) list.push_back(factorization_to_json(f));
      return Json{{"count", fs.size()}, {"factorizations", list}};
    }
    switch (strategy) {
      case Strategy::RealUnique:
        return factorization_to_json(real_factor(p, q, tol));
      case Strategy::Real:
        return factorization_to_json(real_factorizations(p, q, tol).front());
      default:
        return factorization_to_json(canonical_factor(p, q, tol));
    }
  }
  const Poly p = poly_from_json(in);
  if (a.all || strategy == Strategy::Enumerate) {
    if (strategy != Strategy::Canonical && strategy != Strategy::Enumerate) {
      bad("--all enumerates every parcelling; use --strategy canonical or enumerate");
    }
    const RepresentationSet r = enumerate_representations(p, q, tol, a.limit);
    Json list = Json::array();
    for (const auto& s : r.sequences) list.push_back(sequence_to_json(s));
    return Json{{"count", bigint_to_json(r.count)}, {"sequences", list}};
  }
  return sequence_to_json(decompose(p, q, strategy, tol));
}

Json cmd_harmonic(const Args& a, const QuadForm& q, const Tolerances& tol) {
  const HomogPoly p = homog_from_json(read_json_file(a.input));
  Json list = Json::array();
  for (const HomogPoly& h : harmonic_decompose(p, q, tol.harm).components) {
    list.push_back(poly_to_json(h));
  }
  return Json{{"components", list}};
}

Json cmd_maxwell(const Args& a, const QuadForm& q, const Tolerances& tol) {
  if (a.invert) {
    if (a.input.empty()) bad("maxwell --invert needs a polynomial file");
    return maxwell_to_json(maxwell_decompose(homog_from_json(read_json_file(a.input)), q, tol));
  }
  if (!a.input.empty()) bad("a polynomial file needs --invert");
  return poly_to_json(maxwell_poly(q, parse_vectors(a.vectors)));
}

Json cmd_fibers(const Args& a, const QuadForm& q, const Tolerances& tol) {
  const HomogPoly p = homog_from_json(read_json_file(a.input));
  const auto fs = all_factorizations(p, q, tol);
  const ConicRoots roots = conic_roots(strip_quadric_powers(p, q, tol.div).second, q, tol);
  Json list = Json::array();
  for (const auto& f : fs) list.push_back(factorization_to_json(f));
  return Json{{"multiplicities", roots.multiplicities()},
              {"count", fs.size()},
              {"factorizations", list}};
}

Json cmd_discriminant(const Args& a, const QuadForm& q, const Tolerances& tol) {
  const DiscriminantReport r = discriminant_report(homog_from_json(read_json_file(a.input)), q, tol);
  return Json{{"in_discriminant", r.in_discriminant},
              {"relative_discriminant", r.relative_discriminant},
              {"max_multiplicity", r.max_multiplicity}};
}

// --points "[[u0, u1], m], ..." in pencil coordinates.
Json cmd_planar_fiber(const Args& a, const QuadForm& q, const Tolerances& tol) {
  const PencilCenter p(ProjPoint2(vec3_from_json(parse_inline(a.center, "--center"))), q, tol);
  PencilDivisor e;
  for (const Json& entry : parse_inline("[" + a.points + "]", "--points")) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() || entry[0].size() != 2 ||
        !entry[1].is_number_integer() || entry[1].get<int>() < 1) {
      bad("--points entries must be [[u0, u1], multiplicity]");
    }
    e.points.emplace_back(ProjPoint1(complex_from_json(entry[0][0]), complex_from_json(entry[0][1])),
                          entry[1].get<int>());
  }
  const auto [ta, tb] = tangent_lines_from(p);
  const auto fiber = fiber_enumerate(e, p);
  Json list = Json::array();
  for (const ConicDivisor& d : fiber) list.push_back(conic_divisor_to_json(d));
  return Json{{"tangent_points", {vec3_to_json(ta.coords()), vec3_to_json(tb.coords())}},
              {"count", fiber.size()},
              {"fiber", list}};
}

Json cmd_approx(const Args& a, const QuadForm& q, const Tolerances& tol) {
  if (a.d_max < 0) bad("--d-max must be nonnegative");
  std::optional<SurfaceFunction> f = builtin_function(a.function);
  int rule_degree = a.rule_degree;
  if (!f) {
    const Poly p = poly_from_json(read_json_file(a.function));
    f = [p](const Vec3& v) { return p(v); };
    if (rule_degree < 0) rule_degree = 2 * std::max(a.d_max, p.degree());
  }
  if (rule_degree < 0) rule_degree = 2 * a.d_max + 8;
  const QuadratureRule rule = sphere_rule(rule_degree);
  const BandDecomposition d = l2_project(*f, q, a.d_max, rule);
  SeriesStrategy strategy = SeriesStrategy::Auto;
  if (a.series == "canonical") strategy = SeriesStrategy::Canonical;
  if (a.series == "real-unique") strategy = SeriesStrategy::RealUnique;
  const SeriesMultipoles s = multipole_series(d, q, rule, strategy, tol);
  Json multipoles = Json::array();
  for (const Multipole& m : s.multipoles) multipoles.push_back(multipole_to_json(m));
  return Json{{"d_max", a.d_max},
              {"rule_degree", rule_degree},
              {"f_norm", d.f_norm},
              {"band_norms", d.band_norms},
              {"residual_norm", d.residual_norm},
              {"parseval_gap", d.gap},
              {"rho", s.rho},
              {"partial_sums", corollary20_stat(s).partial_sums},
              {"multipoles", multipoles}};
}

Json cmd_counts(const Args& a) {
  return Json{{"kappa", bigint_to_json(count_parcellings(a.d))},
              {"bound", bigint_to_json(representation_bound(a.d))}};
}

Json cmd_gap(const Args& a) { return Json{{"gap", lemma9_gap(a.l, a.degrees)}}; }

// Standard normal coefficients from the seed.
Json cmd_random_poly(const Args& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  auto draw = [&](int k) {
    HomogPoly h(k);
    for (Eigen::Index i = 0; i < h.coeffs().size(); ++i) {
      const double re = n(rng);
      h.coeffs()[i] = a.real ? cd(re, 0.0) : cd(re, n(rng));
    }
    return h;
  };
  if (a.homogeneous) return poly_to_json(draw(a.d));
  std::vector<HomogPoly> parts;
  for (int k = 0; k <= a.d; ++k) parts.push_back(draw(k));
  return poly_to_json(Poly(parts));
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidPartition:
      return kExitParse;
    case ErrorKind::DivisibleByQ:
      return kExitDivisible;
    default:
      return kExitNumerical;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multipole decompositions of polynomials on quadrics", "multipole"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> quadric, output;
  std::optional<double> tol_div, tol_fact, tol_harm, eps_cluster, tol_disc;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--quadric", quadric, "sphere, hyperboloid, or a QuadForm JSON file");
  app.add_option("--tol-div", tol_div, "residual tolerance of division by Q");
  app.add_option("--tol-fact", tol_fact, "residual tolerance of factorizations");
  app.add_option("--tol-harm", tol_harm, "tolerance of harmonic solves");
  app.add_option("--eps-cluster", eps_cluster, "root clustering radius");
  app.add_option("--tol-disc", tol_disc, "relative discriminant threshold");
  app.add_option("--seed", seed, "seed for randomized commands");
  app.add_option("--output", output, "write JSON here instead of stdout");

  Args a;
  Commands c{};
  c.decompose = app.add_subcommand("decompose", "multipole decomposition of a polynomial");
  c.decompose->add_option("poly", a.input, "polynomial JSON file")->required();
  auto* surface = c.decompose->add_flag("--surface", a.surface, "sequence on {Q = 1} (default)");
  c.decompose->add_flag("--cone", a.cone, "factorization of a form modulo Q")->excludes(surface);
  c.decompose->add_option("--strategy", a.strategy)->check(CLI::IsMember(kStrategies));
  c.decompose->add_flag("--all", a.all, "every parcelling");
  c.decompose->add_option("--limit", a.limit, "sequences listed by --surface --all");

  c.harmonic = app.add_subcommand("harmonic", "Q-harmonic decomposition of a form");
  c.harmonic->add_option("poly", a.input, "polynomial JSON file")->required();

  c.maxwell = app.add_subcommand("maxwell", "Maxwell polynomial of vectors, or its inverse");
  auto* vectors = c.maxwell->add_option("--vectors", a.vectors, "e.g. \"[0,0,1],[1,0,0]\"");
  auto* invert = c.maxwell->add_flag("--invert", a.invert, "recover vectors from a harmonic form");
  c.maxwell->add_option("poly", a.input, "harmonic form JSON file (with --invert)");
  vectors->excludes(invert);

  c.fibers = app.add_subcommand("fibers", "every multipole factorization of a form");
  c.fibers->add_option("poly", a.input, "polynomial JSON file")->required();

  c.discriminant = app.add_subcommand("discriminant", "discriminant membership of a form");
  c.discriminant->add_option("poly", a.input, "polynomial JSON file")->required();

  c.planar_fiber = app.add_subcommand("planar-fiber", "conic divisors over a pencil divisor");
  c.planar_fiber->add_option("--center", a.center, "pencil center, e.g. \"[0.3,-0.2,1]\"")
      ->required();
  c.planar_fiber->add_option("--points", a.points, "pencil points, e.g. \"[[1,2],1],[[1,-1],2]\"")
      ->required();

  c.approx = app.add_subcommand("approx", "L2 bands and multipoles of a function on {Q = 1}");
  c.approx->add_option("function", a.function, "exp_x, gauss, or a polynomial JSON file")
      ->required();
  c.approx->add_option("--d-max", a.d_max, "highest band")->required();
  c.approx->add_option("--rule-degree", a.rule_degree, "quadrature exactness degree");
  c.approx->add_option("--strategy", a.series)
      ->check(CLI::IsMember({"auto", "canonical", "real-unique"}));

  c.counts = app.add_subcommand("counts", "parcelling count and representation bound");
  c.counts->add_option("--d", a.d, "degree")->required()->check(CLI::Range(0, 200));

  c.gap = app.add_subcommand("gap", "dimension gap of degree lists");
  c.gap->add_option("--l", a.l, "truncation order")->required();
  c.gap->add_option("--degrees", a.degrees, "degrees d_1 .. d_s")->required()->delimiter(',');

  c.random_poly = app.add_subcommand("random-poly", "random polynomial from the seed");
  c.random_poly->add_option("--d", a.d, "degree")->required()->check(CLI::Range(0, 40));
  c.random_poly->add_flag("--real", a.real, "real coefficients");
  c.random_poly->add_flag("--homogeneous", a.homogeneous, "only the degree-d part");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    Settings s;
    if (!config_path.empty()) apply_config(read_json_file(config_path), s);
    if (quadric) s.quadric = *quadric;
    if (tol_div) s.tol.div = *tol_div;
    if (tol_fact) s.tol.fact = *tol_fact;
    if (tol_harm) s.tol.harm = *tol_harm;
    if (eps_cluster) s.tol.eps_cluster = *eps_cluster;
    if (tol_disc) s.tol.disc = *tol_disc;
    if (seed) s.seed = *seed;
    if (output) s.output = *output;
    if (c.maxwell->parsed() && !a.invert && a.vectors.empty()) bad("maxwell needs --vectors or --invert");

    const QuadForm q = load_quadric(s.quadric, s.tol);
    Json result;
    if (c.decompose->parsed()) result = cmd_decompose(a, q, s.tol);
    if (c.harmonic->parsed()) result = cmd_harmonic(a, q, s.tol);
    if (c.maxwell->parsed()) result = cmd_maxwell(a, q, s.tol);
    if (c.fibers->parsed()) result = cmd_fibers(a, q, s.tol);
    if (c.discriminant->parsed()) result = cmd_discriminant(a, q, s.tol);
    if (c.planar_fiber->parsed()) result = cmd_planar_fiber(a, q, s.tol);
    if (c.approx->parsed()) result = cmd_approx(a, q, s.tol);
    if (c.counts->parsed()) result = cmd_counts(a);
    if (c.gap->parsed()) result = cmd_gap(a);
    if (c.random_poly->parsed()) result = cmd_random_poly(a, s.seed);

    const std::string text = result.dump(2) + "\n";
    if (s.output.empty()) {
      out << text;
    } else {
      std::ofstream file(s.output);
      if (!file) bad("cannot write " + s.output);
      file << text;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace multipole
