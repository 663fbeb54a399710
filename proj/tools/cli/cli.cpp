#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qwalk/edge.hpp"
#include "qwalk/error.hpp"
#include "qwalk/io.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/symmetry.hpp"
#include "qwalk/topology.hpp"

#ifndef QWALK_VERSION
#define QWALK_VERSION "unknown"
#endif

namespace qwalk::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr long kMaxSweepPoints = 1000000;

const std::vector<std::string> kCommands = {"band",     "map",  "winding", "invariant",
                                            "symmetry", "edge", "evolve",  "sweep"};

bool needs_theta(const std::string& c) {
  return c == "band" || c == "map" || c == "winding" || c == "symmetry";
}

bool is_tabular(const std::string& name) {
  return name.size() > 4 && name.compare(name.size() - 4, 4, ".csv") == 0;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// CSV text produced by the library writers to {"columns": [...], "rows": [[...], ...]}.
// Cells that parse as numbers become numbers, "nan" becomes null.
json csv_to_json(const std::string& csv) {
  json j;
  j["columns"] = json::array();
  j["rows"] = json::array();
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json row = json::array();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (header) {
        j["columns"].push_back(cell);
      } else if (cell == "nan" || cell.empty()) {
        row.push_back(nullptr);
      } else {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec == std::errc() && ptr == cell.data() + cell.size()) {
          row.push_back(v);
        } else {
          row.push_back(cell);
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!header) j["rows"].push_back(std::move(row));
    header = false;
  }
  return j;
}

OutputFile tabular(const RunConfig& cfg, const std::string& stem, const std::string& csv) {
  if (cfg.format == "json") return {stem + ".json", csv_to_json(csv).dump(2) + "\n"};
  return {stem + ".csv", csv};
}

template <typename Writer>
std::string capture(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

json complex_json(cplx z) {
  json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

CoinParams coin_of(const RunConfig& cfg, double theta) {
  return {cfg.delta, cfg.alpha, cfg.beta, theta};
}

Vec3 axis_of(const std::string& name) {
  if (name == "x") return Vec3::unit_x();
  if (name == "y") return Vec3::unit_y();
  return Vec3::unit_z();
}

std::string axis_name(Frame f, const std::string& requested) {
  if (!requested.empty()) return requested;
  if (f == Frame::V1) return "x";
  return "z";
}

CommandResult cmd_band(const RunConfig& cfg) {
  const CoinParams p = coin_of(cfg, *cfg.theta);
  const BandStructure b = band_structure(p, static_cast<std::size_t>(cfg.grid));
  const GapReport g = gap_report(b);
  CommandResult r;
  r.files.push_back(tabular(cfg, "band", capture([&](std::ostream& os) { write_band_csv(os, b); })));
  std::ostringstream s;
  s << "gap_delta " << format_double(g.gap_at_delta) << "\n"
    << "gap_delta_plus_pi " << format_double(g.gap_at_delta_plus_pi) << "\n"
    << "gapped " << (g.is_gapped ? "true" : "false") << "\n";
  r.summary = s.str();
  r.notes["gap_delta"] = g.gap_at_delta;
  r.notes["gap_delta_plus_pi"] = g.gap_at_delta_plus_pi;
  r.notes["gapped"] = g.is_gapped;
  return r;
}

CommandResult cmd_map(const RunConfig& cfg) {
  const CoinParams p = coin_of(cfg, *cfg.theta);
  const Frame f = *parse_frame(cfg.frame);
  CommandResult r;
  r.files.push_back(tabular(cfg, "bz_image_" + std::string(to_string(f)), capture([&](std::ostream& os) {
                              write_bz_image_csv(os, p, f, static_cast<std::size_t>(cfg.grid));
                            })));
  if (p.is_gapped()) {
    const std::string ax = axis_name(f, cfg.axis);
    const int w = rotated_winding(p, f, axis_of(ax), static_cast<std::size_t>(cfg.grid));
    r.summary = "winding about " + ax + " " + std::to_string(w) + "\n";
    r.notes["axis"] = ax;
    r.notes["winding"] = w;
  }
  return r;
}

CommandResult cmd_winding(const RunConfig& cfg) {
  const CoinParams p = coin_of(cfg, *cfg.theta);
  if (!p.is_gapped()) throw Error(ErrorKind::GaplessParameters, "winding needs theta outside {0, pi}");
  const Frame f = *parse_frame(cfg.frame);
  const std::string ax = axis_name(f, cfg.axis);
  const auto grid = static_cast<std::size_t>(cfg.grid);
  json j;
  j["theta"] = p.theta();
  j["winding_mt"] = winding_mt(p, Band::Upper, grid);
  j["frame"] = std::string(to_string(f));
  j["axis"] = ax;
  j["rotated_winding"] = rotated_winding(p, f, axis_of(ax), grid);
  CommandResult r;
  r.summary = j.dump() + "\n";
  r.files.push_back({"winding.json", j.dump(2) + "\n"});
  return r;
}

CommandResult cmd_invariant(const RunConfig& cfg) {
  const auto grid = static_cast<std::size_t>(cfg.grid);
  json j;
  if (cfg.theta) {
    const CoinParams p = coin_of(cfg, *cfg.theta);
    j = to_json(relative_homotopy_invariant(p, grid));
  } else {
    const CoinParams p1 = coin_of(cfg, *cfg.theta1);
    const CoinParams p2 = coin_of(cfg, *cfg.theta2);
    j["left"] = to_json(relative_homotopy_invariant(p1, grid));
    j["right"] = to_json(relative_homotopy_invariant(p2, grid));
    j["rel_homotopic"] = rel_homotopic(p1, p2, grid);
    j["predicted_edge_states"] = predicted_edge_states(p1, p2, grid);
  }
  CommandResult r;
  r.summary = j.dump() + "\n";
  r.files.push_back({"invariant.json", j.dump(2) + "\n"});
  return r;
}

CommandResult cmd_symmetry(const RunConfig& cfg) {
  const CoinParams p = coin_of(cfg, *cfg.theta);
  const long n = cfg.ring_size.value_or(8);
  json arr = json::array();
  std::ostringstream s;
  for (const auto& rep : symmetry_suite(p, n, cfg.seed)) {
    arr.push_back(to_json(rep));
    s << to_string(rep.name) << " " << format_double(rep.residual) << " "
      << (rep.passed ? "pass" : (std::isnan(rep.residual) ? "skipped" : "FAIL")) << "\n";
  }
  CommandResult r;
  r.summary = s.str();
  r.files.push_back({"symmetry.json", arr.dump(2) + "\n"});
  return r;
}

InterfaceSpec interface_of(const RunConfig& cfg, long default_n) {
  InterfaceSpec spec;
  spec.delta = cfg.delta;
  spec.alpha = cfg.alpha;
  spec.beta = cfg.beta;
  spec.theta1 = cfg.theta1.value_or(-kPi / 4);
  spec.theta2 = cfg.theta2.value_or(kPi / 4);
  spec.n = cfg.ring_size.value_or(default_n);
  spec.validate();
  return spec;
}

CommandResult cmd_edge(const RunConfig& cfg) {
  const double t1 = cfg.theta1.value_or(-kPi / 4);
  const double t2 = cfg.theta2.value_or(kPi / 4);
  const InterfaceSpec spec = interface_of(cfg, required_ring_size(t1, t2));
  const WalkOperator u = interface_walk(spec);
  const EdgeState e0 = analytic_edge_state(spec, 0.0);
  const EdgeState epi = analytic_edge_state(spec, kPi);

  CommandResult r;
  json j;
  j["spec"] = qwalk::to_json(spec);
  j["norm_constant"] = e0.norm_constant;
  j["decay_a1"] = complex_json(e0.a1);
  j["decay_a2"] = complex_json(e0.a2);
  j["states"] = json::array();
  std::ostringstream s;
  for (const EdgeState* e : {&e0, &epi}) {
    const std::string tag = e->eta == 0.0 ? "eta0" : "etapi";
    const EigenResidual res = eigen_residual(u, *e);
    const bool at_delta = std::abs(wrap_angle(res.quasienergy - spec.delta)) <
                          std::abs(wrap_angle(res.quasienergy - spec.delta - kPi));
    json st;
    st["eta"] = e->eta;
    st["residual"] = res.residual;
    st["quasienergy"] = res.quasienergy;
    st["gap"] = at_delta ? "delta" : "delta+pi";
    st["ring_norm2"] = e->ring_norm2;
    j["states"].push_back(st);
    s << tag << " residual " << format_double(res.residual) << " quasienergy "
      << format_double(res.quasienergy) << " gap " << (at_delta ? "delta" : "delta+pi") << "\n";
    r.files.push_back(tabular(cfg, "edge_" + tag, capture([&](std::ostream& os) { write_state_csv(os, e->state); })));
  }
  j["overlap"] = std::abs(e0.state.inner(epi.state));
  r.files.push_back({"edge.json", j.dump(2) + "\n"});
  r.summary = s.str();
  return r;
}

CommandResult cmd_evolve(const RunConfig& cfg) {
  const InterfaceSpec spec = interface_of(cfg, dynamics_ring_size(cfg.steps, cfg.window));
  std::vector<std::pair<std::string, OverlapCase>> cases;
  for (auto [name, c] : {std::pair{"orthogonal", OverlapCase::OrthogonalToBoth},
                         std::pair{"one", OverlapCase::OverlapOne},
                         std::pair{"both", OverlapCase::OverlapBoth}}) {
    if (cfg.overlap_case == "all" || cfg.overlap_case == name) cases.emplace_back(name, c);
  }
  CommandResult r;
  std::ostringstream s;
  for (const auto& [name, c] : cases) {
    const DynamicsRecord rec = interface_dynamics(spec, c, cfg.steps, cfg.window);
    r.files.push_back(tabular(cfg, "trajectory_" + name,
                              capture([&](std::ostream& os) { write_trajectory_csv(os, rec.trajectory); })));
    r.files.push_back({"evolve_" + name + ".json", qwalk::to_json(rec).dump(2) + "\n"});
    s << name << " plateau " << format_double(rec.plateau) << " predicted "
      << format_double(rec.predicted) << " final " << format_double(rec.final_interface_prob)
      << " period2 " << format_double(rec.period2_amplitude) << " " << (rec.passed ? "pass" : "FAIL")
      << "\n";
  }
  r.summary = s.str();
  r.notes["dynamics_tol"] = kDynamicsTol;
  r.notes["period2_threshold"] = kPeriod2Threshold;
  r.notes["window"] = cfg.window;
  return r;
}

struct SweepRow {
  double theta = 0.0;
  double beta = 0.0;
  double gap_delta = 0.0;
  double gap_delta_pi = 0.0;
  bool gapless = false;
  RelHomotopyInvariant inv;
};

SweepRow sweep_point(const RunConfig& cfg, double value) {
  SweepRow row;
  row.theta = cfg.param == "theta" ? value : *cfg.theta;
  row.beta = cfg.param == "beta" ? value : cfg.beta;
  const CoinParams p(cfg.delta, cfg.alpha, row.beta, row.theta);
  const auto grid = static_cast<std::size_t>(cfg.grid);
  const GapReport g = gap_report(band_structure(p, grid));
  row.gap_delta = g.gap_at_delta;
  row.gap_delta_pi = g.gap_at_delta_plus_pi;
  row.gapless = std::abs(std::sin(p.theta())) < kSweepGaplessTol;
  if (!row.gapless) row.inv = relative_homotopy_invariant(p, grid);
  return row;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  const std::vector<double> values = sweep_values(*cfg.from, *cfg.to, *cfg.step);
  std::vector<SweepRow> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, values.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        rows[i] = sweep_point(cfg, values[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::ostringstream csv;
  csv << "theta,beta,gap_delta,gap_delta_pi,winding,pole_k0,pole_k1,phase_label\n";
  std::size_t pos = 0, neg = 0, gapless = 0;
  for (const auto& row : rows) {
    csv << format_double(row.theta) << ',' << format_double(row.beta) << ','
        << format_double(row.gap_delta) << ',' << format_double(row.gap_delta_pi) << ',';
    if (row.gapless) {
      csv << ",,,gapless\n";
      ++gapless;
      continue;
    }
    const json inv = qwalk::to_json(row.inv);
    csv << row.inv.winding_mt << ',' << inv["pole_k0"].get<std::string>() << ','
        << inv["pole_k1"].get<std::string>() << ',' << csv_cell(inv["phase_label"].get<std::string>())
        << '\n';
    (row.inv.phase_label == PhaseLabel::ThetaPositive ? pos : neg) += 1;
  }
  CommandResult r;
  r.files.push_back(tabular(cfg, "sweep", csv.str()));
  r.summary = "points " + std::to_string(rows.size()) + " ThetaPositive " + std::to_string(pos) +
              " ThetaNegative " + std::to_string(neg) + " gapless " + std::to_string(gapless) + "\n";
  return r;
}

void add_common_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--delta", cfg.delta, "Coin phase delta");
  app.add_option("--alpha", cfg.alpha, "Coin phase alpha");
  app.add_option("--beta", cfg.beta, "Coin phase beta");
  app.add_option("--theta", cfg.theta, "Coin angle theta");
  app.add_option("--theta1", cfg.theta1, "Coin angle for x < 0 (negative)");
  app.add_option("--theta2", cfg.theta2, "Coin angle for x >= 0 (positive)");
  app.add_option("--ring-size", cfg.ring_size, "Number of lattice sites N (even)");
  app.add_option("--grid", cfg.grid, "Momentum grid size");
  app.add_option("--steps", cfg.steps, "Time steps");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--format", cfg.format, "Table format: csv or json");
  app.add_option("--seed", cfg.seed, "Seed for random samples");
  app.add_flag("--degrees", cfg.degrees, "Read all angles in degrees");
}

void write_outputs(const RunConfig& raw, const RunConfig& cfg, const CommandResult& r) {
  const std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  for (const auto& f : r.files) {
    write_file_atomic(dir / f.name, [&](std::ostream& os) { os << f.content; });
    json meta;
    meta["tool"] = "qwalk";
    meta["version"] = QWALK_VERSION;
    meta["command"] = cfg.command;
    meta["file"] = f.name;
    meta["format"] = is_tabular(f.name) ? "csv" : "json";
    meta["config"] = to_json(cfg);
    meta["degrees_input"] = raw.degrees;
    if (!r.notes.is_null()) meta["notes"] = r.notes;
    write_file_atomic(dir / (f.name + ".meta.json"), [&](std::ostream& os) { os << meta.dump(2) << "\n"; });
  }
}

}  // namespace

std::vector<double> sweep_values(double from, double to, double step) {
  std::vector<double> v;
  if (!(step > 0.0) || !(to >= from)) return v;
  const double span = (to - from) / step;
  if (span + 1 > static_cast<double>(kMaxSweepPoints)) return v;
  const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) v.push_back(from + static_cast<double>(i) * step);
  return v;
}

RunConfig resolved(const RunConfig& cfg) {
  RunConfig r = cfg;
  if (!cfg.degrees) return r;
  const double s = kPi / 180.0;
  r.delta *= s;
  r.alpha *= s;
  r.beta *= s;
  for (auto* o : {&r.theta, &r.theta1, &r.theta2, &r.from, &r.to, &r.step})
    if (*o) **o *= s;
  r.degrees = false;
  return r;
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> e;
  const auto& c = cfg.command;
  if (std::find(kCommands.begin(), kCommands.end(), c) == kCommands.end()) {
    e.push_back("unknown command '" + c + "'");
    return e;
  }
  for (double v : {cfg.delta, cfg.alpha, cfg.beta})
    if (!std::isfinite(v)) e.push_back("coin phases must be finite");
  for (const auto* o : {&cfg.theta, &cfg.theta1, &cfg.theta2, &cfg.from, &cfg.to, &cfg.step})
    if (*o && !std::isfinite(**o)) e.push_back("angles and ranges must be finite");
  if (cfg.format != "csv" && cfg.format != "json") e.push_back("--format must be csv or json");
  if (cfg.grid < 8) e.push_back("--grid must be at least 8");
  if (cfg.steps < 0) e.push_back("--steps must be non-negative");
  if (cfg.window < 0) e.push_back("--window must be non-negative");
  if (cfg.ring_size && (*cfg.ring_size < 4 || *cfg.ring_size % 2 != 0))
    e.push_back("--ring-size must be even and at least 4");
  if (cfg.ring_size && (c == "symmetry" || c == "edge") && *cfg.ring_size > kMaxDenseRing)
    e.push_back("--ring-size above " + std::to_string(kMaxDenseRing) + " is too large for dense checks");
  if (needs_theta(c) && !cfg.theta) e.push_back("--theta is required for " + c);
  if ((c == "map" || c == "winding") && !parse_frame(cfg.frame))
    e.push_back("--frame must be identity, v1 or v2");
  if (!cfg.axis.empty() && cfg.axis != "x" && cfg.axis != "y" && cfg.axis != "z")
    e.push_back("--axis must be x, y or z");
  if (c == "invariant") {
    const bool single = cfg.theta.has_value();
    const bool pair = cfg.theta1.has_value() || cfg.theta2.has_value();
    if (single && pair) e.push_back("give either --theta or --theta1/--theta2, not both");
    if (!single && !(cfg.theta1 && cfg.theta2)) e.push_back("invariant needs --theta or both --theta1 and --theta2");
  }
  if (c == "edge" || c == "evolve") {
    if (cfg.theta) e.push_back(c + " takes --theta1 and --theta2, not --theta");
    if (cfg.theta1 && !(*cfg.theta1 < 0.0 && *cfg.theta1 > -kPi)) e.push_back("--theta1 must lie in (-pi, 0)");
    if (cfg.theta2 && !(*cfg.theta2 > 0.0 && *cfg.theta2 < kPi)) e.push_back("--theta2 must lie in (0, pi)");
  }
  if (c == "evolve") {
    if (cfg.overlap_case != "all" && !parse_overlap_case(cfg.overlap_case))
      e.push_back("--case must be orthogonal, one, both or all");
    if (cfg.ring_size && *cfg.ring_size < dynamics_ring_size(cfg.steps, cfg.window))
      e.push_back("--ring-size must be at least " + std::to_string(dynamics_ring_size(cfg.steps, cfg.window)) +
                  " for " + std::to_string(cfg.steps) + " steps");
  }
  if (c == "sweep") {
    if (cfg.param != "theta" && cfg.param != "beta") e.push_back("--param must be theta or beta");
    if (cfg.param == "beta" && !cfg.theta) e.push_back("a beta sweep needs a fixed --theta");
    if (!cfg.from || !cfg.to || !cfg.step) {
      e.push_back("sweep needs --from, --to and --step");
    } else if (sweep_values(*cfg.from, *cfg.to, *cfg.step).empty()) {
      e.push_back("sweep range is empty or has more than " + std::to_string(kMaxSweepPoints) + " points");
    }
  }
  return e;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["delta"] = cfg.delta;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  auto opt = [&](const char* key, const auto& o) {
    if (o) {
      j[key] = *o;
    } else {
      j[key] = nullptr;
    }
  };
  opt("theta", cfg.theta);
  opt("theta1", cfg.theta1);
  opt("theta2", cfg.theta2);
  opt("ring_size", cfg.ring_size);
  j["grid"] = cfg.grid;
  j["steps"] = cfg.steps;
  j["window"] = cfg.window;
  j["format"] = cfg.format;
  j["seed"] = cfg.seed;
  j["frame"] = cfg.frame;
  j["axis"] = cfg.axis;
  j["case"] = cfg.overlap_case;
  j["param"] = cfg.param;
  opt("from", cfg.from);
  opt("to", cfg.to);
  opt("step", cfg.step);
  return j;
}

CommandResult execute(const RunConfig& cfg) {
  const auto& c = cfg.command;
  if (c == "band") return cmd_band(cfg);
  if (c == "map") return cmd_map(cfg);
  if (c == "winding") return cmd_winding(cfg);
  if (c == "invariant") return cmd_invariant(cfg);
  if (c == "symmetry") return cmd_symmetry(cfg);
  if (c == "edge") return cmd_edge(cfg);
  if (c == "evolve") return cmd_evolve(cfg);
  if (c == "sweep") return cmd_sweep(cfg);
  throw Error(ErrorKind::InvalidArgument, "unknown command '" + c + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Discrete-time quantum walk band structure, topology and edge-state tools", "qwalk");
  app.require_subcommand(1);
  RunConfig cfg;

  auto* band = app.add_subcommand("band", "Quasienergy bands and Bloch vectors over the Brillouin zone");
  auto* map = app.add_subcommand("map", "Image of the Brillouin zone on the Bloch sphere");
  auto* winding = app.add_subcommand("winding", "Winding numbers of the upper band");
  auto* invariant = app.add_subcommand("invariant", "Relative homotopy invariant and edge-state prediction");
  auto* symmetry = app.add_subcommand("symmetry", "Symmetry residuals on a ring");
  auto* edge = app.add_subcommand("edge", "Analytic edge states at a sharp interface");
  auto* evolve = app.add_subcommand("evolve", "Interface dynamics for the three overlap cases");
  auto* sweep = app.add_subcommand("sweep", "Phase classification over a parameter range");
  for (auto* sub : {band, map, winding, invariant, symmetry, edge, evolve, sweep}) add_common_options(*sub, cfg);
  for (auto* sub : {map, winding}) {
    sub->add_option("--frame", cfg.frame, "identity, v1 or v2");
    sub->add_option("--axis", cfg.axis, "Winding axis x, y or z (default: the frame's axis)");
  }
  evolve->add_option("--case", cfg.overlap_case, "orthogonal, one, both or all");
  for (auto* sub : {edge, evolve}) sub->add_option("--window", cfg.window, "Interface window half-width");
  sweep->add_option("--param", cfg.param, "theta or beta");
  sweep->add_option("--from", cfg.from, "First value");
  sweep->add_option("--to", cfg.to, "Last value (inclusive)");
  sweep->add_option("--step", cfg.step, "Increment");
  sweep->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << sub->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitValidation;
  }
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  const RunConfig rc = resolved(cfg);
  const auto problems = validate(rc);
  if (!problems.empty()) {
    for (const auto& p : problems) err << "error: " << p << "\n";
    err << sub->help();
    return kExitValidation;
  }
  try {
    const CommandResult r = execute(rc);
    write_outputs(cfg, rc, r);
    out << r.summary;
    for (const auto& f : r.files) out << "wrote " << (std::filesystem::path(rc.out) / f.name).string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_contract_violation(e.kind()) ? kExitContract : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace qwalk::cli
