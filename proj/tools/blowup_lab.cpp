// Command-line driver: check-params, profile-norms, evolve, blowup-study, fit-rates.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "blowup/config.hpp"
#include "blowup/report.hpp"

namespace fs = std::filesystem;
using namespace blowup;

namespace {

constexpr int kOk = 0;
constexpr int kChecksFailed = 1;
constexpr int kBadConfig = 2;
constexpr int kRunFailed = 3;

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void text(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    out << content;
    written_.push_back(name);
  }
  void field(const std::string& stem, const Field& f) {
    write_field_csv(f, (dir_ / (stem + ".csv")).string());
    write_field_binary(f, (dir_ / (stem + ".bin")).string());
    written_.push_back(stem + ".csv");
    written_.push_back(stem + ".bin");
  }
  const fs::path& dir() const { return dir_; }
  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path dir_;
  std::vector<std::string> written_;
};

std::string p_label(double p) {
  if (std::isinf(p)) return "inf";
  return fmt12(p);
}

int check_params(const RunConfig& rc) {
  const AdmissibilityReport r = validate_assumptions(rc.params);
  json j{{"params", to_json(rc.params)}, {"admissibility", to_json(r)}};
  try {
    j["power_case"] = to_string(power_case(rc.params.alpha, rc.params.dim));
    if (std::isfinite(rc.params.k)) j["exponents"] = to_json(exponent_table(rc.params));
  } catch (const std::exception&) {
  }
  std::cout << dump(j);
  if (!r.theorem_applies) {
    std::cerr << "parameters outside the theorem: " << r.explanation() << "\n";
    return kChecksFailed;
  }
  return kOk;
}

int profile_norms(const RunConfig& rc, Writer& w) {
  const auto& pc = rc.profile;
  if (!(pc.t_first < 0 && pc.t_last < 0) || pc.count < 2) {
    throw ConfigError("profile times must be negative with count >= 2");
  }
  std::vector<double> t_list;
  const double a = std::log(-pc.t_first), b = std::log(-pc.t_last);
  for (int i = 0; i < pc.count; ++i) t_list.push_back(-std::exp(a + (b - a) * i / (pc.count - 1)));

  json fits = json::array();
  auto run = [&](ProfileQuantity q, double p) {
    const std::string name = std::string("profile_") + to_string(q) + "_p" + p_label(p) + ".csv";
    try {
      const ScalingFit f = verify_scaling(rc.params, q, t_list, p);
      w.text(name, scaling_fit_csv(f));
      json j = to_json(f);
      j["csv"] = name;
      fits.push_back(j);
    } catch (const std::domain_error& e) {
      fits.push_back({{"quantity", to_string(q)}, {"p", num(p)}, {"skipped", e.what()}});
    }
  };
  for (double p : pc.p_list) run(ProfileQuantity::Lp, p);
  for (double p : pc.p_list) run(ProfileQuantity::GradLp, p);
  run(ProfileQuantity::LapL2, 2.0);
  run(ProfileQuantity::GradLapL2, 2.0);
  json j{{"params", to_json(rc.params)}, {"exponents", to_json(exponent_table(rc.params))},
         {"fits", fits}};
  w.text("profile_norms.json", dump(j));
  return kOk;
}

int evolve_cmd(const RunConfig& rc, Writer& w) {
  const InitialData& in = rc.initial;
  Field f0;
  if (in.shape == "profile") {
    f0 = Profile(rc.params).sample(rc.grid, in.time);
  } else {
    f0 = Field::sample(rc.grid, [&](double x) {
      const double z = (x - in.center) / in.width;
      return cplx{in.amplitude * std::exp(-z * z), 0.0};
    });
  }
  f0.set_time_tag(rc.solve.t_start);
  const TrajectoryRecord traj = evolve(f0, rc.params, rc.solve);
  w.text("trajectory.csv", trajectory_csv(traj));
  w.field("final_field", traj.final_field);
  const json report = conservation_report(traj, f0);
  w.text("conservation.json", dump(report));
  std::cout << dump(report);
  return kOk;
}

int blowup_study(const RunConfig& rc, Writer& w) {
  const StudyReport rep = blowup_report(*rc.study);
  for (std::size_t i = 0; i < rep.trajectories.size(); ++i) {
    const auto& t = rep.trajectories[i];
    w.text("eps_n" + std::to_string(t.n) + ".csv", epsilon_csv(t));
    w.text("trajectory_n" + std::to_string(t.n) + ".csv", trajectory_csv(t.solution));
  }
  w.text("study_report.json", dump(to_json(rep)));
  for (const auto& c : rep.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << "  " << c.detail;
    std::cout << "\n";
  }
  return rep.all_passed() ? kOk : kChecksFailed;
}

int fit_rates_cmd(const RunConfig& rc, Writer& w) {
  const StudyConfig& st = *rc.study;
  const ExponentTable table = exponent_table(rc.params);
  json runs = json::array();
  for (int n : st.n_list) {
    const fs::path path = w.dir() / ("eps_n" + std::to_string(n) + ".csv");
    const EpsilonTrajectory traj = read_epsilon_csv(path.string(), n, st.delta);
    json fits = json::array();
    for (const auto& f : fit_rates(traj, table, st.fit_lo, st.fit_hi)) fits.push_back(to_json(f));
    runs.push_back({{"n", n}, {"source", path.filename().string()}, {"fits", fits}});
  }
  json j{{"exponents", to_json(table)}, {"runs", runs}};
  w.text("rate_fits.json", dump(j));
  std::cout << dump(j);
  return kOk;
}

int run(Command cmd, const std::string& config_path, const std::string& out_dir, bool dt_refine) {
  RunConfig rc;
  try {
    rc = make_run_config(FlatConfig::load(config_path), cmd);
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed config: " << e.what() << "\n";
    return kBadConfig;
  }
  if (cmd == Command::CheckParams) return check_params(rc);

  if (!out_dir.empty()) rc.output_dir = out_dir;
  if (dt_refine) refine_dt(rc);
  if (cmd != Command::FitRates && cmd != Command::Evolve) {
    const AdmissibilityReport r = validate_assumptions(rc.params);
    if (!r.theorem_applies && cmd == Command::BlowupStudy) {
      std::cerr << "parameters outside the theorem: " << r.explanation() << "\n";
      return kChecksFailed;
    }
  }

  Writer w(rc.output_dir);
  w.text("manifest.json", dump(manifest(rc, "running")));
  w.text("schema.json", dump(csv_schema()));
  int status = kRunFailed;
  try {
    switch (cmd) {
      case Command::ProfileNorms: status = profile_norms(rc, w); break;
      case Command::Evolve: status = evolve_cmd(rc, w); break;
      case Command::BlowupStudy: status = blowup_study(rc, w); break;
      case Command::FitRates: status = fit_rates_cmd(rc, w); break;
      case Command::CheckParams: break;
    }
  } catch (const std::exception& e) {
    std::cerr << to_string(cmd) << " failed: " << e.what() << "\n";
    json m = manifest(rc, "failed");
    m["error"] = e.what();
    m["partial_outputs"] = w.written();
    w.text("manifest.json", dump(m));
    return dynamic_cast<const std::invalid_argument*>(&e) ? kBadConfig : kRunFailed;
  }
  json m = manifest(rc, status == kOk ? "complete" : "checks_failed");
  m["outputs"] = w.written();
  w.text("manifest.json", dump(m));
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for blow-up solutions of dissipative NLS"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  bool dt_refine = false;
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (Command c : {Command::CheckParams, Command::ProfileNorms, Command::Evolve,
                    Command::BlowupStudy, Command::FitRates}) {
    CLI::App* sub = app.add_subcommand(to_string(c));
    sub->add_option("--config", config_path, "flat key/value config file")->required();
    if (c != Command::CheckParams) {
      sub->add_option("--out", out_dir, "output directory (overrides run.output_dir)");
      sub->add_flag("--dt-refine", dt_refine, "halve dt for convergence certificates");
    }
    subs.emplace_back(sub, c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadConfig;
  }
  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) {
      try {
        return run(cmd, config_path, out_dir, dt_refine);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRunFailed;
      }
    }
  }
  return kBadConfig;
}
