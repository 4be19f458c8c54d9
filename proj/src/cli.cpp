#include "pocketgrip/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pocketgrip/analysis.hpp"
#include "pocketgrip/config_io.hpp"
#include "pocketgrip/contact.hpp"
#include "pocketgrip/grasp.hpp"
#include "pocketgrip/harness.hpp"
#include "pocketgrip/membrane.hpp"
#include "pocketgrip/table.hpp"

namespace pocketgrip::cli {

namespace {

constexpr double kPascalPerKilopascal = 1e3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Cell num(double v) { return Cell{v}; }
Cell count(std::int64_t v) { return Cell{v}; }
Cell text(std::string_view v) { return Cell{std::string(v)}; }

std::vector<double> kpa_to_pa(const std::vector<double>& kpa) {
  std::vector<double> pa;
  pa.reserve(kpa.size());
  for (double v : kpa) pa.push_back(v * kPascalPerKilopascal);
  return pa;
}

template <class F>
auto with_input(const std::string& path, std::istream& in, F&& read) -> decltype(read(in)) {
  if (path == "-") return read(in);
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open input '" + path + "'");
  return read(file);
}

struct GlobalOptions {
  std::string config_path;
  std::string format = "csv";
  std::string output = "-";
  std::string mode = "exact";
  bool strict = false;
};

// Options of every subcommand; each subcommand reads the ones it registered.
struct CommandOptions {
  std::vector<double> pressures_kpa;
  std::vector<double> forces;
  double force = 3.0;
  double pressure_kpa = 0.0;
  double p_min_kpa = 0.0;
  double p_max_kpa = 125.0;
  int steps = 6;
  std::string mass;
  std::optional<int> contacts;
  std::optional<int> bulges;
  int trials = 10;
  std::optional<std::uint64_t> seed;
  std::string transcripts_dir;
  std::string input = "-";
  std::optional<double> window_start;
  std::optional<double> window_end;
  std::optional<double> d_min;
  std::optional<double> d_max;
};

struct Result {
  Table table;
  int exit_code = kExitOk;
};

class Session {
 public:
  Session(const GlobalOptions& g, const CommandOptions& o, std::istream& in) : g_(g), o_(o), in_(in) {}

  Result bulge() {
    Table t{{"p_pascal", "h_m", "radius_m", "s_m"}, {}};
    for (double p : kpa_to_pa(require_list(o_.pressures_kpa, "--pressure"))) {
      const BulgeState b = resolve_bulge(p, config().membrane, mode());
      t.rows.push_back({num(p), num(b.h), b.radius ? num(*b.radius) : Cell{Null{}}, num(b.s)});
    }
    return {t};
  }

  Result friction() {
    Table t{{"n_newton", "p_pascal", "regime", "e_star_pa", "delta_m", "n_membrane_n", "n_rim_n", "area_m2",
             "friction_n", "mu_eff"},
            {}};
    const auto pressures = kpa_to_pa(require_list(o_.pressures_kpa, "--pressure"));
    for (double n : require_list(o_.forces, "--force")) {
      for (double p : pressures) {
        const ContactSolution c = resolve_contact(n, p, config().membrane, contact_options());
        t.rows.push_back({num(n), num(p), text(to_string(c.regime)), num(c.e_star), num(c.delta), num(c.n_membrane),
                          num(c.n_rim), num(c.area), num(c.friction_force), num(c.mu_eff)});
      }
    }
    return {t};
  }

  Result curve() {
    if (o_.steps < 2) throw UsageError("--steps must be >= 2");
    if (!(o_.p_max_kpa >= o_.p_min_kpa)) throw UsageError("--p-max must be >= --p-min");
    Table t{{"p_pascal", "regime", "mu_eff", "friction_n"}, {}};
    const double lo = o_.p_min_kpa * kPascalPerKilopascal;
    const double hi = o_.p_max_kpa * kPascalPerKilopascal;
    for (int i = 0; i < o_.steps; ++i) {
      const double p = i == o_.steps - 1 ? hi : lo + (hi - lo) * i / (o_.steps - 1);
      const ContactSolution c = resolve_contact(o_.force, p, config().membrane, contact_options());
      t.rows.push_back({num(p), text(to_string(c.regime)), num(c.mu_eff), num(c.friction_force)});
    }
    return {t};
  }

  Result grasp() {
    const double p = o_.pressure_kpa * kPascalPerKilopascal;
    const GraspVerdict v = check_grasp(GraspQuery{payload(), o_.force, p, contact_options()}, config().membrane);
    Result r{verdict_table({SweepCell{o_.force, p, v}})};
    if (g_.strict && !v.feasible) r.exit_code = kExitInfeasible;
    return r;
  }

  Result min_pressure_cmd() {
    const Payload pl = payload();
    const auto p = min_pressure(pl, o_.force, config().membrane, contact_options());
    Result r{{{"mass_kg", "n_newton", "p_pascal"}, {{num(pl.mass), num(o_.force), p ? num(*p) : text("infeasible")}}}};
    if (g_.strict && !p) r.exit_code = kExitInfeasible;
    return r;
  }

  Result min_force_cmd() {
    const Payload pl = payload();
    const double p = o_.pressure_kpa * kPascalPerKilopascal;
    const auto n = min_normal_force(pl, p, config().membrane, contact_options());
    Result r{{{"mass_kg", "p_pascal", "n_newton"}, {{num(pl.mass), num(p), n ? num(*n) : text("infeasible")}}}};
    if (g_.strict && !n) r.exit_code = kExitInfeasible;
    return r;
  }

  Result sweep() {
    std::vector<double> forces = o_.forces;
    std::vector<double> pressures = kpa_to_pa(o_.pressures_kpa);
    if (config().sweep) {
      if (forces.empty()) forces = config().sweep->n_grid;
      if (pressures.empty()) pressures = config().sweep->p_grid;
    }
    require_list(forces, "--force (or [sweep] n_grid)");
    require_list(pressures, "--pressure (or [sweep] p_grid)");
    return {verdict_table(sweep_grid(payload(), forces, pressures, config().membrane, contact_options()))};
  }

  Result simulate() {
    if (o_.trials < 1) throw UsageError("--trials must be >= 1");
    PlantConfig plant = config().plant;
    if (o_.seed) plant.seed = *o_.seed;
    const double p = o_.pressure_kpa * kPascalPerKilopascal;
    const GraspQuery query{payload(), o_.force, p, contact_options()};
    const double rate = monte_carlo_success(query, config().membrane, plant, o_.trials);

    if (!o_.transcripts_dir.empty()) {
      std::filesystem::create_directories(o_.transcripts_dir);
      PlantConfig trial = plant;
      for (int i = 0; i < o_.trials; ++i) {
        trial.seed = trial_seed(plant.seed, static_cast<std::uint64_t>(i));
        std::ostringstream name;
        name << "trial_" << std::setw(4) << std::setfill('0') << i << ".txt";
        std::ofstream file(std::filesystem::path(o_.transcripts_dir) / name.str(), std::ios::binary);
        if (!file) throw std::runtime_error("cannot write transcript " + name.str());
        write_transcript(file, run_grasp_protocol(query, config().membrane, trial));
      }
    }
    return {{{"n_newton", "p_pascal", "trials", "success_rate"}, {{num(o_.force), num(p), count(o_.trials), num(rate)}}}};
  }

  Result rates() {
    const auto records = with_input(o_.input, in_, [](std::istream& is) { return read_trial_records_csv(is); });
    return {rate_table(success_table(records))};
  }

  Result analyze_trace() {
    if (o_.window_start.has_value() != o_.window_end.has_value())
      throw UsageError("--start and --end must be given together");
    std::optional<TimeWindow> window;
    if (o_.window_start) window = TimeWindow{*o_.window_start, *o_.window_end};
    const SlideTrace trace = with_input(o_.input, in_, [](std::istream& is) { return read_trace_csv(is); });
    const FrictionEstimate est = friction_from_trace(trace, window);
    return {{{"mu", "samples", "t_start", "t_end"},
             {{num(est.mu), count(static_cast<std::int64_t>(est.samples)), num(est.t_start), num(est.t_end)}}}};
  }

  Result roundness() {
    if (o_.d_min || o_.d_max) {
      if (!(o_.d_min && o_.d_max)) throw UsageError("--dmin and --dmax must be given together");
      return {{{"d_min", "d_max", "roundness"}, {{num(*o_.d_min), num(*o_.d_max), num(roundness_ratio(*o_.d_min, *o_.d_max))}}}};
    }
    const auto records = with_input(o_.input, in_, [](std::istream& is) { return read_roundness_csv(is); });
    Table t{{"mass_kg", "n_newton", "p_pascal", "trials", "success_rate", "mean_roundness"}, {}};
    for (const auto& row : roundness_table(records)) {
      t.rows.push_back({num(row.mass), num(row.n), num(row.p), count(row.trials), num(row.success_rate),
                        row.mean_roundness ? num(*row.mean_roundness) : Cell{Null{}}});
    }
    return {t};
  }

 private:
  const LoadedConfig& config() {
    if (!config_) {
      if (g_.config_path.empty()) throw UsageError("--config is required for this subcommand");
      config_ = load_config(g_.config_path);
    }
    return *config_;
  }

  BulgeMode mode() const { return *parse_bulge_mode(g_.mode); }

  ContactOptions contact_options() {
    ContactOptions opts = config().grasp.contact(mode());
    if (o_.bulges) opts.bulges = *o_.bulges;
    return opts;
  }

  Payload payload() {
    const GraspSettings& settings = config().grasp;
    double mass = 0.0;
    if (!o_.mass.empty())
      mass = parse_mass(o_.mass);
    else if (settings.mass)
      mass = *settings.mass;
    else
      throw UsageError("--mass is required (or set [grasp] mass)");
    Payload p = settings.payload(mass);
    if (o_.contacts) p.contacts = *o_.contacts;
    validate(p);
    return p;
  }

  static const std::vector<double>& require_list(const std::vector<double>& v, const char* name) {
    if (v.empty()) throw UsageError(std::string(name) + " is required");
    return v;
  }

  static Table verdict_table(const std::vector<SweepCell>& cells) {
    Table t{{"n_newton", "p_pascal", "regime", "capacity_n", "demand_n", "margin_n", "feasible"}, {}};
    for (const auto& c : cells) {
      const auto& v = c.verdict;
      t.rows.push_back({num(c.n), num(c.p), text(to_string(v.regime)), num(v.capacity), num(v.demand), num(v.margin),
                        Cell{v.feasible}});
    }
    return t;
  }

  static Table rate_table(const std::vector<RateRow>& rows) {
    Table t{{"n_newton", "p_pascal", "trials", "success_rate"}, {}};
    for (const auto& r : rows) t.rows.push_back({num(r.n), num(r.p), count(r.trials), num(r.success_rate)});
    return t;
  }

  const GlobalOptions& g_;
  const CommandOptions& o_;
  std::istream& in_;
  std::optional<LoadedConfig> config_;
};

}  // namespace

double parse_mass(const std::string& raw) {
  std::string_view s = raw;
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double scale = 0.0;
  if (s.ends_with("kg")) {
    scale = 1.0;
    s.remove_suffix(2);
  } else if (s.ends_with("g")) {
    scale = 1e-3;
    s.remove_suffix(1);
  } else {
    throw std::invalid_argument("mass needs a unit suffix, e.g. 200g or 0.2kg: '" + raw + "'");
  }
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double value = 0.0;
  if (!parse_number(s, value) || value < 0.0) throw std::invalid_argument("invalid mass '" + raw + "'");
  return value * scale;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pressure-tunable friction model of a soft-rigid gripper finger", "pocketgrip"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  CommandOptions o;
  app.add_option("--config", g.config_path, "Configuration file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", g.output, "Output file, - for stdout");
  app.add_option("--mode", g.mode, "Bulge height model")->check(CLI::IsMember({"exact", "linear"}));
  app.add_flag("--strict", g.strict, "Exit with status 1 when the result is infeasible");

  auto pressures = [&](CLI::App* c) {
    c->add_option("--pressure", o.pressures_kpa, "Pressures [kPa]")->delimiter(',');
  };
  auto forces = [&](CLI::App* c) { c->add_option("--force", o.forces, "Normal forces per contact [N]")->delimiter(','); };
  auto mass = [&](CLI::App* c) {
    c->add_option("--mass", o.mass, "Payload mass with unit, e.g. 200g");
    c->add_option("--contacts", o.contacts, "Finger contacts")->check(CLI::PositiveNumber);
  };
  auto bulges = [&](CLI::App* c) { c->add_option("--bulges", o.bulges, "Bulges per finger")->check(CLI::PositiveNumber); };
  auto input = [&](CLI::App* c) { c->add_option("--input", o.input, "Input CSV, - for stdin"); };

  std::map<std::string, std::function<Result(Session&)>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<Result(Session&)> fn) {
    handlers[name] = std::move(fn);
    return app.add_subcommand(name, help);
  };

  pressures(sub("bulge", "Bulge height, cap radius and protrusion", &Session::bulge));

  auto* friction = sub("friction", "Resolved contact at each (force, pressure)", &Session::friction);
  pressures(friction);
  forces(friction);
  bulges(friction);

  auto* curve = sub("curve", "Friction coefficient over an evenly spaced pressure range", &Session::curve);
  curve->add_option("--force", o.force, "Normal force [N]");
  curve->add_option("--p-min", o.p_min_kpa, "First pressure [kPa]");
  curve->add_option("--p-max", o.p_max_kpa, "Last pressure [kPa]");
  curve->add_option("--steps", o.steps, "Number of pressures");
  bulges(curve);

  auto* grasp = sub("grasp", "Lift feasibility at one (force, pressure)", &Session::grasp);
  mass(grasp);
  bulges(grasp);
  grasp->add_option("--force", o.force, "Normal force per contact [N]")->required();
  grasp->add_option("--pressure", o.pressure_kpa, "Pressure [kPa]")->required();

  auto* min_p = sub("min-pressure", "Smallest pressure that lifts the payload", &Session::min_pressure_cmd);
  mass(min_p);
  bulges(min_p);
  min_p->add_option("--force", o.force, "Normal force per contact [N]")->required();

  auto* min_n = sub("min-force", "Smallest normal force that lifts the payload", &Session::min_force_cmd);
  mass(min_n);
  bulges(min_n);
  min_n->add_option("--pressure", o.pressure_kpa, "Pressure [kPa]")->required();

  auto* sweep = sub("sweep", "Feasibility over a (force, pressure) grid", &Session::sweep);
  mass(sweep);
  bulges(sweep);
  pressures(sweep);
  forces(sweep);

  auto* simulate = sub("simulate", "Monte Carlo success rate of the grasp protocol", &Session::simulate);
  mass(simulate);
  bulges(simulate);
  simulate->add_option("--force", o.force, "Target normal force [N]")->required();
  simulate->add_option("--pressure", o.pressure_kpa, "Target pressure [kPa]")->required();
  simulate->add_option("--trials", o.trials, "Number of trials");
  simulate->add_option("--seed", o.seed, "Base seed (overrides the config)");
  simulate->add_option("--transcripts", o.transcripts_dir, "Directory for per-trial transcripts");

  input(sub("rates", "Success rate per (force, pressure) from trial records", &Session::rates));

  auto* trace = sub("analyze-trace", "Friction coefficient from a sliding force trace", &Session::analyze_trace);
  input(trace);
  trace->add_option("--start", o.window_start, "Window start [s]");
  trace->add_option("--end", o.window_end, "Window end [s]");

  auto* round = sub("roundness", "Roundness ratio of a pair of diameters or a record file", &Session::roundness);
  input(round);
  round->add_option("--dmin", o.d_min, "Minor diameter (any unit, same as --dmax)");
  round->add_option("--dmax", o.d_max, "Major diameter");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Session session(g, o, in);
    const Result result = handlers.at(name)(session);
    std::ostringstream rendered;
    if (g.format == "json")
      write_json(rendered, result.table);
    else
      write_csv(rendered, result.table);

    if (g.output == "-") {
      out << rendered.str();
    } else {
      std::ofstream file(g.output, std::ios::binary);
      if (!file) throw UsageError("cannot open output '" + g.output + "'");
      file << rendered.str();
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    err << "pocketgrip " << name << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace pocketgrip::cli
