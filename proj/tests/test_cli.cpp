#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/cli.hpp"

namespace fs = std::filesystem;
using qwalk::cli::run;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("qwalk_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

Run qwalk_cli(std::vector<std::string> args, const TempDir* dir = nullptr) {
  if (dir) {
    args.push_back("--out");
    args.push_back(dir->str());
  }
  std::ostringstream out, err;
  Run r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::directory_iterator(dir)) m[e.path().filename().string()] = slurp(e.path());
  return m;
}

}  // namespace

TEST_CASE("band") {
  TempDir d;
  const auto r = qwalk_cli({"band", "--theta", "0.7854", "--grid", "512"}, &d);
  CHECK(r.code == 0);
  CHECK(r.out.find("gapped true") != std::string::npos);
  const auto rows = lines(slurp(d.path() / "band.csv"));
  CHECK(rows.size() == 513);
  CHECK(rows[0] == "k,omega_plus,omega_minus,n_x,n_y,n_z");
  const auto meta = nlohmann::json::parse(slurp(d.path() / "band.csv.meta.json"));
  CHECK(meta["tool"] == "qwalk");
  CHECK(meta["command"] == "band");
  CHECK(meta["config"]["theta"] == 0.7854);
  CHECK(meta["config"]["grid"] == 512);
  CHECK_FALSE(meta.contains("timestamp"));

  const auto gapless = qwalk_cli({"band", "--theta", "0"}, &d);
  CHECK(gapless.code == 0);
  CHECK(gapless.out.find("gap_delta 0\n") != std::string::npos);
  CHECK(gapless.out.find("gapped false") != std::string::npos);

  TempDir e;
  const auto missing = qwalk_cli({"band"}, &e);
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--theta is required") != std::string::npos);
  CHECK(missing.err.find("Usage") != std::string::npos);
  CHECK(fs::is_empty(e.path()));
}

TEST_CASE("validation errors are aggregated") {
  const auto r = qwalk_cli({"band", "--theta", "1", "--grid", "4", "--format", "xml", "--ring-size", "7"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--format") != std::string::npos);
  CHECK(r.err.find("--grid") != std::string::npos);
  CHECK(r.err.find("--ring-size") != std::string::npos);
  CHECK(qwalk_cli({"band", "--theta", "abc"}).code == 2);
  CHECK(qwalk_cli({"frobnicate"}).code == 2);
  CHECK(qwalk_cli({}).code == 2);
  CHECK(qwalk_cli({"band", "--help"}).code == 0);
}

TEST_CASE("invariant") {
  TempDir d;
  const auto single = qwalk_cli({"invariant", "--theta", "0.5"}, &d);
  CHECK(single.code == 0);
  const auto j = nlohmann::json::parse(slurp(d.path() / "invariant.json"));
  CHECK(j["phase_label"] == "ThetaPositive");
  CHECK(j["pole_k0"] == "S");
  CHECK(j["pole_k1"] == "N");

  const auto pair = qwalk_cli({"invariant", "--theta1", "0.5", "--theta2", "-0.5"}, &d);
  CHECK(pair.code == 0);
  const auto k = nlohmann::json::parse(slurp(d.path() / "invariant.json"));
  CHECK(k["rel_homotopic"] == false);
  CHECK(k["predicted_edge_states"] == 2);

  const auto gapless = qwalk_cli({"invariant", "--theta", "0"}, &d);
  CHECK(gapless.code == 2);
  CHECK(gapless.err.find("GaplessParameters") != std::string::npos);
  CHECK(qwalk_cli({"invariant", "--theta", "0.5", "--theta1", "-0.5"}).code == 2);
}

TEST_CASE("winding, map and degrees") {
  TempDir d;
  const auto v1p = qwalk_cli({"winding", "--theta", "0.7854", "--frame", "v1"}, &d);
  CHECK(v1p.out.find("\"rotated_winding\":-1") != std::string::npos);
  const auto v1m = qwalk_cli({"winding", "--theta", "-0.7854", "--frame", "v1"}, &d);
  CHECK(v1m.out.find("\"rotated_winding\":1") != std::string::npos);
  const auto v2 = qwalk_cli({"winding", "--theta", "-0.7854", "--frame", "v2"}, &d);
  CHECK(v2.out.find("\"axis\":\"z\"") != std::string::npos);

  TempDir a, b;
  qwalk_cli({"winding", "--theta", "45", "--degrees", "--frame", "v1"}, &a);
  qwalk_cli({"winding", "--theta", "0.7853981633974483", "--frame", "v1"}, &b);
  CHECK(slurp(a.path() / "winding.json") == slurp(b.path() / "winding.json"));

  // The upper band passes through the pole n_beta = +-y at k0, so a winding about y is undefined.
  const auto hit = qwalk_cli({"winding", "--theta", "0.5", "--axis", "y"}, &d);
  CHECK(hit.code == 3);
  CHECK(hit.err.find("CurveHitsAxis") != std::string::npos);

  const auto m = qwalk_cli({"map", "--theta", "0.5", "--frame", "v2", "--grid", "64", "--format", "json"}, &d);
  CHECK(m.code == 0);
  const auto t = nlohmann::json::parse(slurp(d.path() / "bz_image_V2.json"));
  CHECK(t["columns"].size() == 5);
  CHECK(t["rows"].size() == 64);
  CHECK(qwalk_cli({"map", "--theta", "0.5", "--frame", "v3"}).code == 2);
}

TEST_CASE("symmetry, edge and evolve") {
  TempDir d;
  const auto s = qwalk_cli({"symmetry", "--theta", "0.7854", "--ring-size", "8"}, &d);
  CHECK(s.code == 0);
  const auto reps = nlohmann::json::parse(slurp(d.path() / "symmetry.json"));
  REQUIRE(reps.size() == 6);
  for (const auto& r : reps) CHECK(r["passed"] == true);

  const auto e = qwalk_cli({"edge", "--beta", "1.5707963267948966", "--ring-size", "64"}, &d);
  CHECK(e.code == 0);
  const auto ej = nlohmann::json::parse(slurp(d.path() / "edge.json"));
  CHECK(ej["states"][0]["residual"].get<double>() < 1e-8);
  CHECK(ej["states"][0]["gap"] != ej["states"][1]["gap"]);
  CHECK(lines(slurp(d.path() / "edge_eta0.csv")).size() == 65);

  TempDir f;
  const auto small = qwalk_cli({"edge", "--ring-size", "16"}, &f);
  CHECK(small.code == 2);
  CHECK(fs::is_empty(f.path()));
  CHECK(qwalk_cli({"edge", "--theta1", "0.3"}).code == 2);

  const auto v = qwalk_cli({"evolve", "--beta", "1.5707963267948966", "--case", "both", "--steps", "60"}, &d);
  CHECK(v.code == 0);
  CHECK(lines(slurp(d.path() / "trajectory_both.csv")).size() == 62);
  const auto rec = nlohmann::json::parse(slurp(d.path() / "evolve_both.json"));
  CHECK(rec["case"] == "OverlapBoth");
  const auto meta = nlohmann::json::parse(slurp(d.path() / "evolve_both.json.meta.json"));
  CHECK(meta["notes"]["dynamics_tol"] == 0.02);
  CHECK(qwalk_cli({"evolve", "--steps", "200", "--ring-size", "128"}).code == 2);
}

TEST_CASE("sweep") {
  TempDir d;
  const auto r = qwalk_cli({"sweep", "--from", "-3", "--to", "3", "--step", "0.1", "--grid", "128"}, &d);
  CHECK(r.code == 0);
  const auto rows = lines(slurp(d.path() / "sweep.csv"));
  REQUIRE(rows.size() == 62);
  CHECK(rows[0] == "theta,beta,gap_delta,gap_delta_pi,winding,pole_k0,pole_k1,phase_label");
  int gapless = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double theta = std::stod(rows[i].substr(0, rows[i].find(',')));
    const std::string label = rows[i].substr(rows[i].rfind(',') + 1);
    if (label == "gapless") {
      ++gapless;
      CHECK(std::abs(theta) < 1e-9);
    } else {
      CHECK(label == (theta > 0 ? "ThetaPositive" : "ThetaNegative"));
    }
  }
  CHECK(gapless == 1);

  const auto b = qwalk_cli({"sweep", "--param", "beta", "--theta", "0.5", "--from", "0", "--to", "3.14159", "--step", "0.25"}, &d);
  CHECK(b.code == 0);
  const auto brows = lines(slurp(d.path() / "sweep.csv"));
  CHECK(brows.size() == 14);
  for (std::size_t i = 1; i < brows.size(); ++i) CHECK(brows[i].substr(brows[i].rfind(',') + 1) == "ThetaPositive");

  CHECK(qwalk_cli({"sweep", "--from", "1", "--to", "0", "--step", "0.1"}).code == 2);
  CHECK(qwalk_cli({"sweep", "--from", "0", "--to", "1", "--step", "0"}).code == 2);
  CHECK(qwalk_cli({"sweep", "--param", "beta", "--from", "0", "--to", "1", "--step", "0.1"}).code == 2);

  TempDir one, many;
  qwalk_cli({"sweep", "--from", "-1", "--to", "1", "--step", "0.05", "--threads", "1"}, &one);
  qwalk_cli({"sweep", "--from", "-1", "--to", "1", "--step", "0.05", "--threads", "4"}, &many);
  CHECK(slurp(one.path() / "sweep.csv") == slurp(many.path() / "sweep.csv"));
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::vector<std::string>> cmds = {
      {"band", "--theta", "0.3", "--alpha", "0.2", "--grid", "64"},
      {"symmetry", "--theta", "0.6", "--alpha", "0.7853981633974483", "--beta", "1", "--seed", "9"},
      {"edge", "--theta1", "-0.9", "--theta2", "0.6"},
      {"evolve", "--case", "one", "--steps", "40"},
  };
  for (const auto& c : cmds) {
    TempDir a, b;
    REQUIRE(qwalk_cli(c, &a).code == 0);
    REQUIRE(qwalk_cli(c, &b).code == 0);
    const auto sa = snapshot(a.path());
    CHECK(sa == snapshot(b.path()));
    for (const auto& [name, content] : sa) CHECK(name.find(".partial") == std::string::npos);
  }
}

TEST_CASE("sweep_values") {
  CHECK(qwalk::cli::sweep_values(0, 1, 0.25).size() == 5);
  CHECK(qwalk::cli::sweep_values(0, 0, 1).size() == 1);
  CHECK(qwalk::cli::sweep_values(0, -1, 1).empty());
  CHECK(qwalk::cli::sweep_values(0, 1, -1).empty());
}
