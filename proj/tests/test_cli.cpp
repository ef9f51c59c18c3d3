#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "multipole/cli.hpp"
#include "multipole/json_io.hpp"
#include "test_util.hpp"

using namespace multipole;
using namespace multipole::testing;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "multipole_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string write_json(const std::string& name, const Json& j) { return write(name, j.dump()); }

const std::string kXY = R"({"degree":2,"terms":[{"exp":[1,1,0],"re":1}]})";
const std::string kXX = R"({"degree":2,"terms":[{"exp":[2,0,0],"re":1}]})";
const std::string kOne = R"({"degree":0,"terms":[{"exp":[0,0,0],"re":1}]})";
const std::string kQ =
    R"({"degree":2,"terms":[{"exp":[2,0,0],"re":1},{"exp":[0,2,0],"re":1},{"exp":[0,0,2],"re":1}]})";

}  // namespace

TEST_CASE("cli examples") {
  const std::string xy = write("xy.json", kXY);
  const Run cone = run({"decompose", xy, "--cone", "--all"});
  REQUIRE(cone.code == 0);
  CHECK(cone.json()["count"] == 3);
  CHECK(cone.json()["factorizations"].size() == 3);

  const Run one = run({"decompose", write("const1.json", kOne), "--surface"});
  REQUIRE(one.code == 0);
  CHECK(one.json() == Json::parse(R"({"lambda":[1.0,0.0]})"));

  const Run counts = run({"counts", "--d", "3"});
  REQUIRE(counts.code == 0);
  CHECK(counts.json() == Json::parse(R"({"kappa":15,"bound":45})"));
  // Past 64 bits the counts become decimal strings.
  CHECK(run({"counts", "--d", "30"}).json()["bound"].is_string());

  const Run disc = run({"discriminant", write("xsq.json", kXX)});
  REQUIRE(disc.code == 0);
  CHECK(disc.json()["in_discriminant"] == true);
  CHECK(run({"discriminant", xy}).json()["in_discriminant"] == false);

  const Run mx = run({"maxwell", "--vectors", "[0,0,1],[0,0,1]"});
  REQUIRE(mx.code == 0);
  const HomogPoly expected = 2.0 * HomogPoly::monomial({0, 0, 2}) -
                             HomogPoly::monomial({2, 0, 0}) - HomogPoly::monomial({0, 2, 0});
  CHECK(rel_diff(homog_from_json(mx.json()), expected) < 1e-15);
}

TEST_CASE("cli surface enumeration stays within the representation bound") {
  const Run gen = run({"--seed", "5", "random-poly", "--d", "5"});
  REQUIRE(gen.code == 0);
  const std::string path = write("random5.json", gen.out);
  const Run all = run({"decompose", path, "--surface", "--all", "--limit", "4"});
  REQUIRE(all.code == 0);
  const Json j = all.json();
  CHECK(BigInt(j["count"].get<std::uint64_t>()) <= representation_bound(5));
  CHECK(j["sequences"].size() == 4);

  const Poly p = poly_from_json(gen.json());
  std::mt19937_64 rng(1);
  for (const Json& s : j["sequences"]) {
    const MultipoleSequence seq = sequence_from_json(s);
    for (int i = 0; i < 20; ++i) {
      const Vec3 v = random_surface_point(QuadForm::sphere(), rng);
      CHECK(std::abs(seq(v) - p(v)) < 1e-8 * std::max(1.0, std::abs(p(v))));
    }
  }
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == kExitParse);
  CHECK(run({"bogus"}).code == kExitParse);
  CHECK(run({"counts"}).code == kExitParse);
  CHECK(run({"decompose", write("broken.json", "{\"degree\": 2, ")}).code == kExitParse);
  CHECK(run({"decompose", (scratch() / "missing.json").string()}).code == kExitParse);
  const std::string mixed =
      write("mixed.json", R"({"degree":2,"terms":[{"exp":[1,0,0],"re":1},{"exp":[2,0,0],"re":1}]})");
  CHECK(run({"decompose", mixed, "--cone"}).code == kExitParse);
  CHECK(run({"decompose", mixed, "--cone", "--surface"}).code == kExitParse);
  CHECK(run({"decompose", write("extra.json", R"({"degree":0,"terms":[],"x":1})")}).code ==
        kExitParse);
  CHECK(run({"gap", "--l", "0", "--degrees", "2"}).code == kExitParse);

  CHECK(run({"discriminant", write("q.json", kQ)}).code == kExitDivisible);

  // x^2 is not harmonic.
  CHECK(run({"maxwell", "--invert", write("xx.json", kXX)}).code == kExitNumerical);
  // Real-unique needs a definite form.
  CHECK(run({"--quadric", "hyperboloid", "decompose", write("xy2.json", kXY), "--strategy",
             "real-unique"})
            .code == kExitNumerical);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cli config and quadric files") {
  const std::string xy = write("xy.json", kXY);
  const std::string qfile =
      write_json("hyp.json", quadform_to_json(QuadForm::hyperboloid()));
  const std::string cfg = write_json(
      "cfg.json", Json{{"quadric", qfile}, {"tolerances", {{"fact", 1e-7}}}, {"seed", 3}});
  const Run a = run({"--config", cfg, "decompose", xy, "--cone", "--all"});
  const Run b = run({"--quadric", "hyperboloid", "decompose", xy, "--cone", "--all"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  CHECK(run({"--config", write("bad_cfg.json", R"({"quadrik":"sphere"})"), "counts", "--d", "2"})
            .code == kExitParse);
  CHECK(run({"--config", write("bad_tol.json", R"({"tolerances":{"typo":1}})"), "counts", "--d",
             "2"})
            .code == kExitParse);

  const fs::path out = scratch() / "counts_out.json";
  fs::remove(out);
  REQUIRE(run({"--output", out.string(), "counts", "--d", "4"}).code == 0);
  std::ifstream in(out);
  CHECK(Json::parse(in)["kappa"] == 105);
}

TEST_CASE("cli output is deterministic") {
  const std::string p = write("det.json", run({"--seed", "9", "random-poly", "--d", "4"}).out);
  CHECK(run({"--seed", "9", "random-poly", "--d", "4"}).out ==
        run({"--seed", "9", "random-poly", "--d", "4"}).out);
  CHECK(run({"--seed", "9", "random-poly", "--d", "4"}).out !=
        run({"--seed", "10", "random-poly", "--d", "4"}).out);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"decompose", p}, {"decompose", p, "--all", "--limit", "50"},
        {"approx", "exp_x", "--d-max", "6"}, {"approx", "gauss", "--d-max", "4"}}) {
    const Run first = run(args);
    REQUIRE(first.code == 0);
    CHECK(run(args).out == first.out);
  }
}

TEST_CASE("cli output round-trips through the parsers") {
  const std::string xy = write("xy.json", kXY);
  const Json p5 = run({"--seed", "2", "random-poly", "--d", "3", "--homogeneous"}).json();
  const std::string h3 = write_json("h3.json", p5);

  // Factorizations.
  for (const Json& f : run({"fibers", h3}).json()["factorizations"]) {
    CHECK(factorization_to_json(factorization_from_json(f)) == f);
    const HomogPoly rec = factorization_from_json(f).reconstruct(QuadForm::sphere());
    CHECK(rel_diff(rec, homog_from_json(p5)) < 1e-8);
  }
  const Json canon = run({"decompose", xy, "--cone"}).json();
  CHECK(factorization_to_json(factorization_from_json(canon)) == canon);

  // Sequences.
  const Json seq = run({"decompose", write("r.json", run({"random-poly", "--d", "4"}).out)}).json();
  CHECK(sequence_to_json(sequence_from_json(seq)) == seq);

  // Polynomials and harmonic components.
  for (const Json& c : run({"harmonic", h3}).json()["components"]) {
    CHECK(poly_to_json(homog_from_json(c)) == c);
  }
  CHECK(poly_to_json(poly_from_json(p5)) == p5);

  // Maxwell vectors.
  const std::string h = write("harm.json", run({"maxwell", "--vectors", "[1,2,0],[0,1,1]"}).out);
  const Json mv = run({"maxwell", "--invert", h}).json();
  CHECK(maxwell_to_json(maxwell_from_json(mv)) == mv);

  // Conic divisors.
  const Run pf = run({"planar-fiber", "--center", "[0.3,-0.2,1]", "--points", "[[1,2],1],[[1,-1],2]"});
  REQUIRE(pf.code == 0);
  CHECK(pf.json()["count"] == 6);
  for (const Json& d : pf.json()["fiber"]) CHECK(conic_divisor_to_json(conic_divisor_from_json(d)) == d);

  // Approximation multipoles.
  const Json ap = run({"approx", "exp_x", "--d-max", "4"}).json();
  CHECK(ap["multipoles"].size() == 5);
  for (const Json& m : ap["multipoles"]) CHECK(multipole_to_json(multipole_from_json(m)) == m);

  // Quadric files.
  for (const QuadForm& q : {QuadForm::sphere(), QuadForm(Mat3(Vec3(1.0, kI, 2.0).asDiagonal()))}) {
    const Json j = quadform_to_json(q);
    CHECK(quadform_to_json(quadform_from_json(j)) == j);
  }
}

TEST_CASE("approx on a polynomial file reproduces its bands") {
  const Run r = run({"approx", write("xy_a.json", kXY), "--d-max", "3"});
  REQUIRE(r.code == 0);
  const Json j = r.json();
  CHECK(j["residual_norm"].get<double>() < 1e-12);
  const Multipole w2 = multipole_from_json(j["multipoles"][2]);
  CHECK(w2.approx_equal(Multipole::from(1.0, {HomogPoly::monomial({1, 0, 0}),
                                               HomogPoly::monomial({0, 1, 0})}),
                        1e-10));
}
