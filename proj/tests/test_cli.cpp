#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "koszul/report.hpp"

using namespace koszul;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path model_dir() {
  const char* d = std::getenv("KOSZUL_MODEL_DIR");
  REQUIRE(d != nullptr);
  return d;
}

}  // namespace

TEST_CASE("minimal model parses") {
  ModelFile m = parse_model("signature z2=0 z=1 convention=bl\ngen x deg=(|0)\n");
  CHECK(m.ctx->size() == 1);
  CHECK(gh(m.ctx->gen(0).degree) == 0);
  CHECK(m.conv == SignConvention::BernsteinLeites);
}

TEST_CASE("parsed derivations equal programmatic ones") {
  ModelFile m = parse_model(
      "signature z2=0 z=1 convention=bl\n"
      "gen x deg=(|0)\ngen p deg=(|1)\n"
      "der Q deg=(|1) { x -> p; p -> 0 }\n");
  Derivation want = Derivation::make(
      m.ctx, [&] {
        MultiDegree d = m.ctx->zero_degree();
        d.z[0] = 1;
        return d;
      }(),
      {Polynomial::generator(m.ctx, 1), Polynomial::zero(m.ctx)});
  CHECK(m.derivations.at("Q") == want);
}

TEST_CASE("diagnostics carry positions") {
  // odd square is a degree-check error
  try {
    parse_model("signature z2=1 z=0 convention=bl\ngen t deg=(1|)\npoly p = t^2\n");
    FAIL("expected a diagnostic");
  } catch (const parse_error& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("odd generator") != std::string::npos);
  }
  // unknown generator
  CHECK_THROWS_AS(parse_model("signature z2=0 z=1 convention=bl\npoly p = y\n"), parse_error);
  // duplicate names
  CHECK_THROWS_AS(parse_model("signature z2=0 z=1 convention=bl\n"
                              "gen x deg=(|0)\ngen x deg=(|0)\n"),
                  kernel_error);
  // degree arity mismatch
  CHECK_THROWS_AS(parse_model("signature z2=0 z=1 convention=bl\ngen x deg=(1|0)\n"),
                  parse_error);
  // statements out of order
  CHECK_THROWS_AS(parse_model("gen x deg=(|0)\n"), parse_error);
}

TEST_CASE("print/parse round-trip is idempotent on every shipped model") {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(model_dir())) {
    if (entry.path().extension() != ".kos") continue;
    ++count;
    INFO("model ", entry.path().string());
    const std::string text = slurp(entry.path());
    ModelFile m1 = parse_model(text);
    const std::string p1 = print_model(m1);
    ModelFile m2 = parse_model(p1);
    const std::string p2 = print_model(m2);
    CHECK(p1 == p2);
  }
  CHECK(count >= 12);
}

TEST_CASE("run_command: verdicts and witnesses") {
  ModelFile t1 = parse_model(slurp(model_dir() / "t1sigma.kos"));
  CommandFlags f;
  f.der = "d";
  Report r = run_command("check-q", t1, f);
  CHECK(r.all_pass());
  CHECK(r.exit_code() == 0);

  ModelFile broken = parse_model(slurp(model_dir() / "so3_broken.kos"));
  CommandFlags fj;
  fj.table = "C";
  Report rj = run_command("jacobi", broken, fj);
  CHECK(!rj.all_pass());
  CHECK(rj.exit_code() == 1);
  CHECK(!rj.checks.front().witness.empty());

  ModelFile bd = parse_model(slurp(model_dir() / "berezin_demo.kos"));
  CommandFlags fb;
  fb.poly = "f";
  fb.gens = "t1,t2";
  Report rb = run_command("berezin", bd, fb);
  REQUIRE(rb.output.size() == 1);
  CHECK(rb.output[0] == "integral = 3");

  ModelFile cot = parse_model(slurp(model_dir() / "cotangent.kos"));
  CommandFlags fx;
  fx.form = "w";
  fx.poly = "f";
  fx.poly2 = "g";
  Report rx = run_command("bracket", cot, fx);
  CHECK(rx.output[0] == "(f,g) = 1");

  // unknown names surface as input errors
  CommandFlags bad;
  bad.der = "nope";
  CHECK_THROWS_AS(run_command("check-q", t1, bad), kernel_error);
  CHECK_THROWS_AS(run_command("frobnicate", t1, bad), kernel_error);
}

TEST_CASE("the susy-expand command prints the expected zero-bivector pattern") {
  ModelFile m = parse_model(slurp(model_dir() / "psm_so3.kos"));
  CommandFlags f;
  f.bivec = "zero";
  f.m = 1;
  Report r = run_command("susy-expand", m, f);
  REQUIRE(r.output.size() == 1);
  CHECK(r.output[0] ==
        "integrand = A1_0*dX1_1 + A1_1*dX1_0 + A2_0*dX2_1 + A2_1*dX2_0 + "
        "A3_0*dX3_1 + A3_1*dX3_0");
}

TEST_CASE("every command dispatches") {
  ModelFile cot = parse_model(slurp(model_dir() / "cotangent.kos"));
  ModelFile psm = parse_model(slurp(model_dir() / "psm_so3.kos"));
  ModelFile su2 = parse_model(slurp(model_dir() / "cs_su2.kos"));

  CommandFlags f;
  f.form = "w";
  f.poly = "f";
  Report rh = run_command("hamiltonian", cot, f);
  CHECK(rh.exit_code() == 0);
  CHECK(!rh.output.empty());

  f.poly = "S";
  CHECK(run_command("master", cot, f).exit_code() == 0);

  CommandFlags fp;
  fp.bivec = "pi";
  fp.m = 1;
  Report rl = run_command("odd-lift", psm, fp);
  CHECK(rl.exit_code() == 0);
  Report rd = run_command("defect", psm, fp);
  CHECK(rd.output.size() == 6);  // one equation per phase coordinate
  Report rg = run_command("gauge-var", psm, fp);
  CHECK(rg.output.size() == 6);
  Report rp = run_command("print", psm, fp);
  CHECK(!rp.output.empty());

  CommandFlags fc;
  fc.table = "K";
  fc.m = 2;
  Report rc = run_command("cs-extend", su2, fc);
  CHECK(rc.exit_code() == 0);
  CHECK(rc.output.front() == "dimension = 12");

  CommandFlags fcs;
  fcs.table = "K";
  Report rcd = run_command("defect", su2, fcs);
  CHECK(rcd.output.size() == 3);
  Report rcg = run_command("gauge-var", su2, fcs);
  CHECK(rcg.output.size() == 3);
}

TEST_CASE("json reports are schema-tagged and byte-stable") {
  ModelFile m = parse_model(slurp(model_dir() / "so3.kos"));
  CommandFlags f;
  f.table = "C";
  Report r1 = run_command("jacobi", m, f);
  Report r2 = run_command("jacobi", m, f);
  const std::string j1 = report_json(r1), j2 = report_json(r2);
  CHECK(j1 == j2);
  CHECK(j1.find("\"schema\": \"koszul-report/1\"") != std::string::npos);
  CHECK(j1.find("elapsed") == std::string::npos);  // timing never enters the JSON
}

TEST_CASE("the installed binary returns the documented exit codes") {
  const char* cli = std::getenv("KOSZUL_CLI");
  REQUIRE(cli != nullptr);
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WEXITSTATUS(st);
  };
  const std::string dir = model_dir().string();
  CHECK(run("check-q --model " + dir + "/t1sigma.kos --der d") == 0);
  CHECK(run("jacobi --model " + dir + "/so3_broken.kos --const C") == 1);
  CHECK(run("measure-check --model " + dir + "/aff1.kos --der dce") == 1);
  CHECK(run("top-cohomology --model " + dir + "/heisenberg.kos --const C") == 0);
  CHECK(run("jacobi --model " + dir + "/so3.kos --const Nope") == 2);
  CHECK(run("check-q --model " + dir + "/missing_file.kos --der d") == 2);
  CHECK(run("gauge-fix --model " + dir + "/gauge_fix_r2.kos --bivec zero") == 2);
  CHECK(run("gauge-fix --model " + dir + "/gauge_fix_r2.kos --bivec w") == 0);
  CHECK(run("print --model " + dir + "/psm_super.kos") == 0);
  CHECK(run("susy-expand --model " + dir + "/psm_so3.kos --bivec pi --m 2") == 0);
}
