#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "emtopo/cli.hpp"
#include "emtopo/io.hpp"

using namespace emtopo;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("emtopo_cli_" + name)).string();
}

}  // namespace

TEST_CASE("homology of the torus in degree 1") {
  const Result r = run({"homology", "--spec", "torus", "--deg", "1"});
  REQUIRE(r.code == cli::kExitPass);
  const Json j = r.json();
  CHECK(j["schema"] == 1);
  CHECK(j["pass"] == true);
  REQUIRE(j["groups"].size() == 1);
  CHECK(j["groups"][0]["degree"] == 1);
  CHECK(j["groups"][0]["betti"] == 2);
  CHECK(j["groups"][0]["torsion"].empty());
}

TEST_CASE("exit codes") {
  CHECK(run({"homology", "--bogus"}).code == cli::kExitUsage);
  CHECK(run({"scenario", "no-such-scenario"}).code == cli::kExitUsage);
  CHECK(run({"--format", "yaml", "homology"}).code == cli::kExitUsage);
  const Result bad = run({"homology", "--spec", "icosphere:level=-1"});
  CHECK(bad.code == cli::kExitError);
  CHECK(bad.json()["error"]["code"] == "DegenerateMesh");
  CHECK(bad.json()["pass"] == false);
  const Result missing = run({"homology", "--mesh", "/nonexistent/mesh.json"});
  CHECK(missing.code == cli::kExitError);
  CHECK(missing.json()["error"]["code"] == "IoError");
  // A check that cannot pass under an impossible tolerance fails with code 3.
  const Result strict = run({"--tol", "gauss_flux=0", "scenario", "point-charge", "--level", "2"});
  CHECK(strict.code == cli::kExitFailed);
  CHECK(strict.json()["pass"] == false);
}

TEST_CASE("tolerance overrides loosen and tighten named checks") {
  const Result loose = run({"--tol", "gauss_flux=0.5", "scenario", "point-charge", "--level", "1"});
  CHECK(loose.code == cli::kExitPass);
  bool found = false;
  const Json j = loose.json();
  for (const auto& c : j["checks"])
    if (c["name"] == "gauss_flux") {
      found = true;
      CHECK(c["tolerance"] == 0.5);
    }
  CHECK(found);
  CHECK(run({"--tol", "abc", "homology"}).code == cli::kExitError);
}

TEST_CASE("identical invocations give identical output") {
  const std::vector<std::string> args{"scenario", "aharonov-bohm"};
  CHECK(run(args).out == run(args).out);
  const Result a = run({"scenario", "n-charges", "--charges", "1,-2"});
  const Result b = run({"--serial", "scenario", "n-charges", "--charges", "1,-2"});
  CHECK(a.code == cli::kExitPass);
  CHECK(a.out == b.out);
}

TEST_CASE("every scenario passes at its defaults") {
  for (const char* name : {"point-charge", "n-charges", "open-wire", "closed-wire", "aharonov-bohm", "photon",
                           "dirac"}) {
    CAPTURE(name);
    const Result r = run({"scenario", name});
    CHECK(r.code == cli::kExitPass);
    CHECK(r.json()["pass"] == true);
  }
  const Result si = run({"--units", "si", "scenario", "point-charge", "--k", "-2", "--level", "3"});
  CHECK(si.code == cli::kExitPass);
}

TEST_CASE("closed wire reports the computed H2 with a note") {
  const Result r = run({"scenario", "closed-wire"});
  const Json j = r.json();
  const int b2 = j["H2"]["betti"];
  bool noted = false;
  for (const auto& n : j["notes"]) noted = noted || n.get<std::string>().find("discrepancy") != std::string::npos;
  CHECK(noted == (b2 != 0));
}

TEST_CASE("construct, save, classify and compare through files") {
  const std::string a = temp_path("a.json"), b = temp_path("b.json"), m = temp_path("mesh.json");
  REQUIRE(run({"mesh", "--spec", "annulus:n=16,layers=2", "--save", m}).code == cli::kExitPass);
  REQUIRE(run({"construct", "--mesh", m, "--characters", "0", "--save", a}).code == cli::kExitPass);
  REQUIRE(run({"construct", "--mesh", m, "--characters", "1pi", "--save", b}).code == cli::kExitPass);
  const Result c = run({"classify", "--mesh", m, "--connection", b});
  REQUIRE(c.code == cli::kExitPass);
  CHECK(c.json()["class"]["flat"] == true);
  const Result e = run({"equivalent", "--mesh", m, "--a", a, "--b", b});
  CHECK(e.json()["equivalent"] == false);
  const Result s = run({"equivalent", "--mesh", m, "--a", b, "--b", b, "--witness"});
  CHECK(s.json()["equivalent"] == true);
  for (const auto& p : {a, b, m}) std::remove(p.c_str());
}

TEST_CASE("text format and output file") {
  const Result t = run({"--format", "text", "scenario", "dirac"});
  CHECK(t.code == cli::kExitPass);
  CHECK(t.out.find("[PASS] dispersion_relative_error") != std::string::npos);
  const std::string path = temp_path("report.json");
  REQUIRE(run({"--out", path, "charge", "--spec", "icosphere:level=3", "--field", "coulomb:q=2e"}).code ==
          cli::kExitPass);
  const Json j = io::read_file(path);
  CHECK(j["command"] == "charge");
  std::remove(path.c_str());
}

TEST_CASE("physics subcommands") {
  CHECK(run({"ampere", "--field", "wire:I=1.5", "--center", "0.1;0;0", "--expect", "1.5"}).code ==
        cli::kExitPass);
  CHECK(run({"maxwell-check", "--field", "planewave:E0=1,kx=1,ky=2,kz=0.5"}).code == cli::kExitPass);
  CHECK(run({"photon-check", "--polarity", "-"}).code == cli::kExitPass);
  CHECK(run({"dirac-check", "--p", "0.3;0;0.2"}).code == cli::kExitPass);
}
