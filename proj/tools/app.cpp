#include "app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "heuncross/analysis.hpp"
#include "heuncross/heun.hpp"
#include "heuncross/kernels.hpp"

namespace heuncross::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Model { general, n2, n3 };
enum class Format { csv, json };

const char* to_string(Model m) {
  switch (m) {
    case Model::general: return "general";
    case Model::n2: return "n2";
    case Model::n3: return "n3";
  }
  return "?";
}

struct RunConfig {
  std::string command;
  Model model = Model::n2;
  double u0 = 1.0;
  double a = 2.0;
  double delta1 = 2.0;
  double delta2 = 0.0;
  double drive = 1.0;
  double t0 = 0.0;
  Branch branch = Branch::plus;
  std::optional<double> t_start;
  std::optional<double> t_end;
  double periods = 1.0;
  std::size_t samples = 257;
  std::string output = "-";
  Format format = Format::csv;
  double rtol = 1e-10;
  double atol = 1e-12;
  double threshold = 1e-8;
  int n_max = 4;
  std::size_t max_steps = 10'000'000;
  std::string initial = "ground";
};

using Column = std::variant<std::vector<double>, std::vector<std::string>>;

struct Table {
  Json meta = Json::object();
  std::vector<std::string> names;
  std::vector<Column> columns;

  void add(std::string name, Column column) {
    names.push_back(std::move(name));
    columns.push_back(std::move(column));
  }
  std::size_t rows() const {
    return columns.empty() ? 0 : std::visit([](const auto& c) { return c.size(); }, columns.front());
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- configuration

double period_of(const RunConfig& c) { return kTwoPi / c.drive; }

double window_start(const RunConfig& c) { return c.t_start.value_or(c.t0); }

double window_end(const RunConfig& c) {
  return c.t_end.value_or(window_start(c) + c.periods * period_of(c));
}

void validate(const RunConfig& c) {
  if (!(c.drive > 0.0)) throw ParameterError("drive must be positive");
  if (c.samples < 2) throw ParameterError("samples must be at least 2");
  if (!(window_end(c) > window_start(c))) throw ParameterError("time window is empty");
}

fields::FieldConfig general_config(const RunConfig& c) {
  fields::FieldConfig f{c.u0, c.a, c.delta1, c.delta2, c.drive, c.t0};
  f.validate();
  return f;
}

fields::N2Config n2_config(const RunConfig& c) {
  if (c.model != Model::n2) throw ParameterError(c.command + " requires --model n2");
  fields::N2Config n{c.u0, c.delta1, c.drive, c.t0};
  n.validate();
  return n;
}

// The N = 3 family in physical units: scaled formula evaluated at drive·(t - t0).
oracle::Field n3_field(const RunConfig& c) {
  const double s = c.drive;
  const double u0 = c.u0;
  const double su0 = c.u0 / s;
  const double sd1 = c.delta1 / s;
  const Branch branch = c.branch;
  const double t0 = c.t0;
  fields::detuning_n3(su0, sd1, branch, 0.0);
  return {[u0](double) { return u0; },
          [=](double t) { return s * fields::detuning_n3(su0, sd1, branch, s * (t - t0)); }};
}

oracle::Field make_field(const RunConfig& c) {
  switch (c.model) {
    case Model::general: return oracle::make_field(general_config(c));
    case Model::n2: return oracle::make_field(n2_config(c));
    case Model::n3: return n3_field(c);
  }
  throw ParameterError("unknown model");
}

// Heun-side configuration in scaled units.
fields::FieldConfig scaled_field_config(const RunConfig& c) {
  switch (c.model) {
    case Model::general: return general_config(c).scaled();
    case Model::n2: return n2_config(c).to_field_config().scaled();
    case Model::n3: return fields::n3_field_config(c.u0 / c.drive, c.delta1 / c.drive, c.branch);
  }
  throw ParameterError("unknown model");
}

StateVector initial_state(const RunConfig& c) {
  if (c.initial == "ground") return {{1.0, 0.0}, {0.0, 0.0}, 0.0};
  if (c.initial == "excited") return {{0.0, 0.0}, {1.0, 0.0}, 0.0};
  throw ParameterError("initial must be ground or excited");
}

oracle::Options oracle_options(const RunConfig& c) {
  oracle::Options o;
  o.rtol = c.rtol;
  o.atol = c.atol;
  o.max_steps = c.max_steps;
  return o;
}

Json base_meta(const RunConfig& c) {
  Json m = Json::object();
  m["tool"] = "heuncross";
  m["version"] = kToolVersion;
  m["command"] = c.command;
  m["model"] = to_string(c.model);
  m["u0"] = c.u0;
  m["delta1"] = c.delta1;
  if (c.model == Model::general) {
    m["a"] = c.a;
    m["delta2"] = c.delta2;
  }
  m["drive"] = c.drive;
  m["t0"] = c.t0;
  if (c.model == Model::n3) m["branch"] = heuncross::to_string(c.branch);
  m["t_start"] = window_start(c);
  m["t_end"] = window_end(c);
  m["samples"] = c.samples;
  m["rtol"] = c.rtol;
  m["atol"] = c.atol;
  m["initial"] = c.initial;
  m["scaled_u0"] = c.u0 / c.drive;
  m["scaled_delta1"] = c.delta1 / c.drive;
  if (c.model == Model::general) m["scaled_delta2"] = c.delta2 / c.drive;
  if (c.model == Model::n2) {
    m["scaled_a"] = fields::a_from_delta1(c.delta1 / c.drive);
    m["scaled_delta2"] = 2.0;
  }
  if (c.model == Model::n3) {
    try {
      const auto f = fields::n3_field_config(c.u0 / c.drive, c.delta1 / c.drive, c.branch);
      m["scaled_a"] = f.a;
      m["scaled_delta2"] = f.delta2;
    } catch (const DomainError&) {
      m["scaled_a"] = nullptr;
    }
  }
  return m;
}

std::vector<double> sample_times(const RunConfig& c) {
  return analysis::linspace(window_start(c), window_end(c), c.samples);
}

// ---------------------------------------------------------------- commands

void fill_states(Table& t, const std::vector<double>& times, const std::vector<StateVector>& states,
                 bool with_phase) {
  const std::size_t n = states.size();
  std::vector<double> re1(n), im1(n), re2(n), im2(n), pop2(n), norm(n), phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    re1[i] = states[i].a1.real();
    im1[i] = states[i].a1.imag();
    re2[i] = states[i].a2.real();
    im2[i] = states[i].a2.imag();
    pop2[i] = std::norm(states[i].a2);
    norm[i] = states[i].norm();
    phase[i] = states[i].phase;
  }
  t.add("t", times);
  t.add("re_a1", re1);
  t.add("im_a1", im1);
  t.add("re_a2", re2);
  t.add("im_a2", im2);
  t.add("pop2", pop2);
  t.add("norm", norm);
  if (with_phase) t.add("phase", phase);
}

Table cmd_detuning(const RunConfig& c) {
  Table t;
  const auto times = sample_times(c);
  const auto field = make_field(c);
  t.add("t", times);
  t.add("delta_t", kernels::sample_detuning(field.detuning, times));
  return t;
}

Table cmd_simulate(const RunConfig& c) {
  Table t;
  const auto times = sample_times(c);
  const auto traj =
      oracle::integrate_at(make_field(c), initial_state(c), window_start(c), times, oracle_options(c));
  fill_states(t, traj.times, traj.states, true);
  t.meta["norm_drift"] = traj.norm_drift;
  return t;
}

Table cmd_closed_form(const RunConfig& c) {
  Table t;
  const auto cfg = n2_config(c);
  const auto times = sample_times(c);
  const auto solution = closedform::MatchedSolution::n2(cfg, initial_state(c), window_start(c));
  fill_states(t, times, solution.trajectory(times), true);
  t.meta["coefficient_plus_re"] = solution.coefficients().plus.real();
  t.meta["coefficient_plus_im"] = solution.coefficients().plus.imag();
  t.meta["coefficient_minus_re"] = solution.coefficients().minus.real();
  t.meta["coefficient_minus_im"] = solution.coefficients().minus.imag();
  return t;
}

Table cmd_floquet(const RunConfig& c) {
  closedform::FloquetReport report;
  if (c.model == Model::n2) {
    report = analysis::floquet_report(n2_config(c), oracle_options(c));
  } else {
    const auto mono = oracle::monodromy(make_field(c), c.t0, period_of(c), oracle_options(c));
    report.lambda1 = report.lambda2 = std::nan("");
    report.monodromy_eigs = mono.eigenvalues;
    report.monodromy_exponents = mono.exponents;
    report.unit_circle_deviation = mono.unit_circle_deviation;
  }
  Table t;
  t.add("lambda1", std::vector<double>{report.lambda1});
  t.add("lambda2", std::vector<double>{report.lambda2});
  t.add("exponent1", std::vector<double>{report.monodromy_exponents[0]});
  t.add("exponent2", std::vector<double>{report.monodromy_exponents[1]});
  t.add("re_mu1", std::vector<double>{report.monodromy_eigs[0].real()});
  t.add("im_mu1", std::vector<double>{report.monodromy_eigs[0].imag()});
  t.add("re_mu2", std::vector<double>{report.monodromy_eigs[1].real()});
  t.add("im_mu2", std::vector<double>{report.monodromy_eigs[1].imag()});
  t.add("residual_mod_drive", std::vector<double>{report.residual_mod_drive});
  t.add("unit_circle_deviation", std::vector<double>{report.unit_circle_deviation});
  return t;
}

Table cmd_heun_map(const RunConfig& c) {
  const auto cfg = scaled_field_config(c);
  std::vector<std::string> branch;
  std::vector<double> a, gamma, delta, epsilon, alpha, beta, q, alpha1, fuchs;
  for (const Branch b : {Branch::plus, Branch::minus}) {
    const auto m = heun::map_to_heun(cfg, b);
    branch.emplace_back(heuncross::to_string(b));
    a.push_back(m.params.a);
    gamma.push_back(m.params.gamma.real());
    delta.push_back(m.params.delta.real());
    epsilon.push_back(m.params.epsilon.real());
    alpha.push_back(m.params.alpha.real());
    beta.push_back(m.params.beta.real());
    q.push_back(m.params.q.real());
    alpha1.push_back(m.prefactor.alpha1);
    fuchs.push_back(std::abs(m.params.fuchs_residual()));
  }
  Table t;
  t.add("branch", branch);
  t.add("a", a);
  t.add("gamma", gamma);
  t.add("delta", delta);
  t.add("epsilon", epsilon);
  t.add("alpha", alpha);
  t.add("beta", beta);
  t.add("q", q);
  t.add("alpha1", alpha1);
  t.add("fuchs_residual", fuchs);
  return t;
}

Table cmd_terminate(const RunConfig& c) {
  if (c.n_max < 0) throw ParameterError("n-max must be non-negative");
  fields::FieldConfig cfg;
  cfg.u0 = c.u0 / c.drive;
  cfg.delta1 = c.delta1 / c.drive;
  const auto records = heun::termination_search(cfg, c.n_max, true);
  std::vector<double> order, delta2, drift, degree;
  std::vector<std::string> branch, kind, roots;
  for (const auto& r : records) {
    order.push_back(r.order);
    branch.emplace_back(heun::to_string(r.branch));
    delta2.push_back(r.delta2);
    kind.emplace_back(heun::to_string(r.kind));
    std::string joined;
    for (const double x : r.admissible_a) joined += (joined.empty() ? "" : ";") + fmt(x);
    roots.push_back(joined);
    drift.push_back(r.drift);
    degree.push_back(r.constraint.degree());
  }
  Table t;
  t.add("order", order);
  t.add("branch", branch);
  t.add("delta2", delta2);
  t.add("kind", kind);
  t.add("constraint_degree", degree);
  t.add("admissible_a", roots);
  t.add("drift", drift);
  return t;
}

Table cmd_compare(const RunConfig& c, bool& passed) {
  const auto cfg = n2_config(c);
  const auto cmp = analysis::compare_n2(cfg, initial_state(c), window_start(c), window_end(c),
                                        c.samples, oracle_options(c));
  passed = cmp.max_a2_deviation <= c.threshold;
  Table t;
  t.add("max_a2_deviation", std::vector<double>{cmp.max_a2_deviation});
  t.add("max_a1_deviation", std::vector<double>{cmp.max_a1_deviation});
  t.add("oracle_norm_drift", std::vector<double>{cmp.oracle_norm_drift});
  t.add("threshold", std::vector<double>{c.threshold});
  t.add("verdict", std::vector<std::string>{passed ? "PASS" : "FAIL"});
  return t;
}

// ---------------------------------------------------------------- output

std::string meta_value(const Json& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_csv(std::ostream& os, const Table& t) {
  os << '#';
  for (const auto& [key, value] : t.meta.items()) os << ' ' << key << '=' << meta_value(value);
  os << '\n';
  for (std::size_t k = 0; k < t.names.size(); ++k) os << (k ? "," : "") << t.names[k];
  os << '\n';
  const std::size_t rows = t.rows();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
      if (k) os << ',';
      std::visit(
          [&](const auto& col) {
            using T = std::decay_t<decltype(col)>;
            if constexpr (std::is_same_v<T, std::vector<double>>) {
              os << fmt(col[i]);
            } else {
              os << col[i];
            }
          },
          t.columns[k]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  Json data = Json::object();
  for (std::size_t k = 0; k < t.names.size(); ++k) {
    std::visit([&](const auto& col) { data[t.names[k]] = col; }, t.columns[k]);
  }
  Json doc = Json::object();
  doc["meta"] = t.meta;
  doc["data"] = data;
  os << doc.dump(2) << '\n';
}

void emit(const RunConfig& c, const Table& t) {
  const auto write = [&](std::ostream& os) {
    if (c.format == Format::json) {
      write_json(os, t);
    } else {
      write_csv(os, t);
    }
  };
  if (c.output == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  // Written beside the target and renamed, so a failure never leaves a partial file.
  const std::filesystem::path target(c.output);
  std::filesystem::path part = target;
  part += ".part";
  try {
    {
      std::ofstream os(part, std::ios::binary | std::ios::trunc);
      if (!os) throw std::runtime_error("cannot open " + part.string());
      write(os);
      os.flush();
      if (!os) throw std::runtime_error("write failed for " + part.string());
    }
    std::filesystem::rename(part, target);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(part, ec);
    throw;
  }
}

void report_error(const char* kind, const std::string& message) {
  Json e = Json::object();
  e["error"] = kind;
  e["message"] = message;
  std::cerr << e.dump() << '\n';
}

int execute(RunConfig& c) {
  validate(c);
  bool passed = true;
  Table t;
  if (c.command == "detuning") {
    t = cmd_detuning(c);
  } else if (c.command == "simulate") {
    t = cmd_simulate(c);
  } else if (c.command == "closed-form") {
    t = cmd_closed_form(c);
  } else if (c.command == "floquet") {
    t = cmd_floquet(c);
  } else if (c.command == "heun-map") {
    t = cmd_heun_map(c);
  } else if (c.command == "terminate") {
    t = cmd_terminate(c);
  } else if (c.command == "compare") {
    t = cmd_compare(c, passed);
  } else {
    throw ParameterError("unknown command " + c.command);
  }
  Json meta = base_meta(c);
  for (const auto& [key, value] : t.meta.items()) meta[key] = value;
  t.meta = std::move(meta);
  emit(c, t);
  return passed ? kOk : kCompareFail;
}

}  // namespace

int run(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Two-state model with periodic level crossing: fields, Heun analytics, exact N=2 "
               "solution and a numerical oracle"};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "key = value config file; flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  const std::map<std::string, Model> models{{"general", Model::general}, {"n2", Model::n2}, {"n3", Model::n3}};
  const std::map<std::string, Branch> branches{{"plus", Branch::plus}, {"minus", Branch::minus}};
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};

  app.add_option("--model", c.model, "Field family: general, n2, n3")
      ->transform(CLI::CheckedTransformer(models, CLI::ignore_case));
  app.add_option("--u0", c.u0, "Rabi frequency U0");
  app.add_option("--a", c.a, "Heun singular point a (general model)");
  app.add_option("--delta1", c.delta1, "Carrier detuning");
  app.add_option("--delta2", c.delta2, "Modulation strength (general model)");
  app.add_option("--drive", c.drive, "Drive angular frequency");
  app.add_option("--t0", c.t0, "Time offset of the drive");
  app.add_option("--branch", c.branch, "Sign branch for the n3 field: plus, minus")
      ->transform(CLI::CheckedTransformer(branches, CLI::ignore_case));
  app.add_option("--t-start", c.t_start, "Window start (default t0)");
  auto* t_end = app.add_option("--t-end", c.t_end, "Window end");
  auto* periods = app.add_option("--periods", c.periods, "Window length in drive periods (default 1)");
  t_end->excludes(periods);
  app.add_option("--samples", c.samples, "Number of sample times (>= 2)");
  app.add_option("--output,-o", c.output, "Output path, - for stdout");
  app.add_option("--format", c.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--rtol", c.rtol, "Oracle relative tolerance");
  app.add_option("--atol", c.atol, "Oracle absolute tolerance");
  app.add_option("--max-steps", c.max_steps, "Oracle step cap");
  app.add_option("--threshold", c.threshold, "compare: pass threshold on max |a2| deviation");
  app.add_option("--n-max", c.n_max, "terminate: highest order N");
  app.add_option("--initial", c.initial, "Initial state: ground or excited")
      ->check(CLI::IsMember({"ground", "excited"}));

  const std::vector<std::pair<const char*, const char*>> commands{
      {"detuning", "Sample the detuning: t, delta_t"},
      {"simulate", "Oracle trajectory of the amplitude equations"},
      {"closed-form", "Matched exact N=2 amplitudes"},
      {"floquet", "Analytic and monodromy Floquet exponents"},
      {"heun-map", "Heun constants for both sign branches"},
      {"terminate", "Termination table over N"},
      {"compare", "Exact N=2 solution against the oracle with a verdict"}};
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->callback([&c, name = std::string(name)] { c.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what());
    return kConfigError;
  }

  try {
    return execute(c);
  } catch (const ParameterError& e) {
    report_error("config", e.what());
    return kConfigError;
  } catch (const DomainError& e) {
    report_error("config", e.what());
    return kConfigError;
  } catch (const NumericalError& e) {
    report_error("numerical", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    report_error("numerical", e.what());
    return kNumericalError;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace heuncross::cli
