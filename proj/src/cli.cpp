#include "hdosc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <variant>

#include "hdosc/entropies.hpp"
#include "hdosc/errors.hpp"
#include "hdosc/fit.hpp"
#include "hdosc/laguerre_asym.hpp"
#include "hdosc/moments.hpp"
#include "hdosc/states.hpp"

namespace hdosc {
namespace {

using Cell = std::variant<std::string, double, long long>;

struct Record {
  std::vector<std::pair<std::string, Cell>> fields;
  void put(std::string name, Cell value) { fields.emplace_back(std::move(name), std::move(value)); }
};

struct Table {
  std::vector<Record> records;
  std::vector<std::string> comments;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string state;
  std::vector<int> d_grid;
  std::vector<double> q_grid{2.0};
  std::string space = "position";
  std::string mode = "both";
  std::string out;
  std::string format = "csv";
  double tol = 0.0;
  int parallelism = 1;
  int n = 0;
  int l = 0;
  double lambda = 1.0;

  QuadratureSpec quad() const {
    QuadratureSpec spec = QuadratureSpec::defaults();
    if (tol > 0.0) spec.target_rel_tol = tol;
    return spec;
  }
  bool want_exact() const { return mode != "asymptotic"; }
  bool want_asym() const { return mode != "exact"; }
};

void add_common(CLI::App* app, Common& c, bool with_state = true) {
  if (with_state) {
    app->add_option("--state", c.state, "State, e.g. \"D=5;lambda=1;n=0;mu=2^2,1^1,0^1\"; '^*' fills the chain");
    app->add_option("--grid-D,--D-grid", c.d_grid, "Comma-separated dimensions")->delimiter(',');
    app->add_option("--n", c.n, "Principal number when --state is absent");
    app->add_option("--l", c.l, "Orbital number when --state is absent (chain l,0,...,0)");
    app->add_option("--lambda", c.lambda, "Oscillator strength when --state is absent");
  }
  app->add_option("--out", c.out, "Output file (default stdout)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--tol", c.tol, "Quadrature relative tolerance");
  app->add_option("--parallelism", c.parallelism, "Worker threads")->check(CLI::PositiveNumber);
}

std::vector<HarmonicState> resolve_states(const Common& c) {
  std::vector<HarmonicState> states;
  if (!c.state.empty()) {
    const StateTemplate t = parse_state_template(c.state);
    if (c.d_grid.empty()) {
      states.push_back(t.instantiate());
    } else {
      for (int d : c.d_grid) states.push_back(t.instantiate(d));
    }
    return states;
  }
  if (c.d_grid.empty()) throw UsageError("one of --state or --grid-D is required");
  for (int d : c.d_grid) {
    HarmonicState s = single_step_state(d, c.n, c.l, c.lambda);
    validate(s);
    states.push_back(s);
  }
  return states;
}

Space space_of(const Common& c) { return parse_space(c.space); }

std::vector<Record> run_ordered(const std::vector<std::function<Record()>>& tasks, int parallelism) {
  std::vector<Record> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(parallelism, static_cast<int>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

double rel_err(double exact, double asym) { return std::fabs(exact - asym) / std::fabs(asym); }

void put_state(Record& r, const HarmonicState& s) {
  r.put("D", static_cast<long long>(s.dimension));
  r.put("lambda", s.lambda);
  r.put("n", static_cast<long long>(s.n));
  r.put("l", static_cast<long long>(s.l()));
}

void attach_slope(Table& table, const std::vector<double>& grid, const std::vector<double>& errs) {
  int usable = 0;
  for (double e : errs) usable += e != 0.0 ? 1 : 0;
  if (usable < 2) {
    for (auto& r : table.records) {
      r.put("fitted_slope", std::string());
      r.put("slope_ci", std::string());
    }
    table.comments.emplace_back("no slope: fewer than two grid points with non-zero rel_err");
    return;
  }
  const SlopeFit fit = fit_loglog_slope(grid, errs);
  for (auto& r : table.records) {
    r.put("fitted_slope", fit.slope);
    r.put("slope_ci", fit.half_width_95);
  }
  if (fit.points == 2) table.comments.emplace_back("slope_ci is 0: two points leave no residual degrees of freedom");
}

// ---- subcommands ----

struct MomentsArgs {
  Common c;
  std::vector<double> k{2.0};
};

Table cmd_moments(const MomentsArgs& a) {
  const auto states = resolve_states(a.c);
  const Space space = space_of(a.c);
  const QuadratureSpec spec = a.c.quad();
  std::vector<std::function<Record()>> tasks;
  for (const auto& s : states) {
    for (double k : a.k) {
      tasks.emplace_back([&a, s, k, space, spec] {
        Record r;
        put_state(r, s);
        r.put("k", k);
        r.put("space", std::string(to_string(space)));
        double exact = 0.0;
        double asym = 0.0;
        if (a.c.want_exact()) {
          exact = radial_moment({s, k, space, Mode::exact}, spec);
          r.put("exact", exact);
        }
        if (a.c.want_asym()) {
          asym = radial_moment({s, k, space, Mode::asymptotic}, spec);
          r.put("asym", asym);
        }
        if (a.c.want_exact() && a.c.want_asym()) r.put("rel_err", rel_err(exact, asym));
        return r;
      });
    }
  }
  return {run_ordered(tasks, a.c.parallelism), {}};
}

struct RenyiArgs {
  Common c;
  std::string part = "total";
};

EntropyResult renyi_part(const std::string& part, const HarmonicState& s, double q, Space space, Mode mode,
                         const QuadratureSpec& spec) {
  if (part == "radial") return renyi_radial(s, q, space, mode, spec);
  if (part == "angular") return renyi_angular(s, q, mode, spec);
  return renyi_total(s, q, space, mode, spec);
}

Table cmd_renyi(const RenyiArgs& a) {
  const auto states = resolve_states(a.c);
  const Space space = space_of(a.c);
  const QuadratureSpec spec = a.c.quad();
  std::vector<std::function<Record()>> tasks;
  for (const auto& s : states) {
    for (double q : a.c.q_grid) {
      if (!(q > 0.0)) throw UsageError("--q values must be positive");
      tasks.emplace_back([&a, s, q, space, spec] {
        Record r;
        put_state(r, s);
        r.put("q", q);
        r.put("space", std::string(to_string(space)));
        r.put("part", a.part);
        double exact = 0.0;
        double asym = 0.0;
        if (a.c.want_exact()) {
          const EntropyResult e = renyi_part(a.part, s, q, space, Mode::exact, spec);
          exact = e.value;
          r.put("exact", exact);
          r.put("exact_radial", e.radial_part);
          r.put("exact_angular", e.angular_part);
        }
        if (a.c.want_asym()) {
          const EntropyResult e = renyi_part(a.part, s, q, space, Mode::asymptotic, spec);
          asym = e.value;
          r.put("asym", asym);
          std::string notes;
          for (const auto& n : e.notes) notes += (notes.empty() ? "" : "; ") + n;
          r.put("notes", notes);
        }
        if (a.c.want_exact() && a.c.want_asym()) {
          r.put("diff", exact - asym);
          r.put("rel_err", rel_err(exact, asym));
        }
        return r;
      });
    }
  }
  return {run_ordered(tasks, a.c.parallelism), {}};
}

Table cmd_shannon(const Common& c) {
  const auto states = resolve_states(c);
  const Space space = space_of(c);
  const QuadratureSpec spec = c.quad();
  std::vector<std::function<Record()>> tasks;
  for (const auto& s : states) {
    tasks.emplace_back([&c, s, space, spec] {
      Record r;
      put_state(r, s);
      r.put("space", std::string(to_string(space)));
      double exact = 0.0;
      double conj = 0.0;
      if (c.want_exact()) {
        const EntropyResult e = shannon(s, space, Mode::exact, spec);
        exact = e.value;
        r.put("exact", exact);
        r.put("exact_radial", e.radial_part);
        r.put("exact_angular", e.angular_part);
      }
      if (c.want_asym()) {
        conj = shannon(s, space, Mode::asymptotic, spec).value;
        r.put("conjecture", conj);
      }
      if (c.want_exact() && c.want_asym()) {
        r.put("diff_per_D", (exact - conj) / s.dimension);
        r.put("rel_err", rel_err(exact, conj));
      }
      return r;
    });
  }
  Table t{run_ordered(tasks, c.parallelism), {}};
  if (c.want_asym()) t.comments.emplace_back("conjecture column: conjectured leading term, not a proven expansion");
  return t;
}

struct AsymArgs {
  Common c;
  double sigma = 1.0;
  double rate = 2.0;
  double kappa = 2.0;
  int m = 0;
  std::vector<double> alpha_grid;
  int order = 0;
  double near_one = 0.05;
  std::string d1 = "published";
};

Table cmd_asym(const AsymArgs& a) {
  if (a.alpha_grid.empty()) throw UsageError("--alpha-grid is required");
  const QuadratureSpec spec = a.c.quad();
  const bool corollary = a.rate == 1.0;
  if (corollary && a.kappa != 2.0) throw UsageError("rate = 1 is only covered for kappa = 2");
  std::vector<std::function<Record()>> tasks;
  for (double alpha : a.alpha_grid) {
    tasks.emplace_back([&a, alpha, spec, corollary] {
      const J1Params p{a.sigma, a.rate, a.kappa, a.m, alpha};
      const D1Form form = a.d1 == "laplace" ? D1Form::laplace : D1Form::published;
      const AsymptoticBreakdown b =
          corollary ? corollary_asym(a.sigma, a.m, alpha) : j1_asym(p, a.order, a.near_one, form);
      const LogValue exact = j1_exact(p, spec);
      Record r;
      r.put("alpha", alpha);
      r.put("exact_log", exact.log_mag);
      r.put("asym_log", b.total_log);
      r.put("rel_err", std::fabs(std::expm1(exact.log_mag - b.total_log)));
      std::string notes;
      for (const auto& n : b.notes) notes += (notes.empty() ? "" : "; ") + n;
      r.put("notes", notes);
      return r;
    });
  }
  Table t{run_ordered(tasks, a.c.parallelism), {}};
  std::vector<double> errs;
  for (const auto& r : t.records) errs.push_back(std::get<double>(r.fields[3].second));
  attach_slope(t, a.alpha_grid, errs);
  if (corollary) t.comments.emplace_back("rate = 1: degenerate-rate expansion used (order ignored)");
  return t;
}

Table cmd_sums(const Common& c) {
  const auto states = resolve_states(c);
  const QuadratureSpec spec = c.quad();
  for (double q : c.q_grid) {
    if (!(q > 0.5)) throw UsageError("--q must exceed 1/2 for the conjugate exponent to exist");
  }
  std::vector<std::function<Record()>> tasks;
  for (const auto& s : states) {
    for (double q : c.q_grid) {
      tasks.emplace_back([s, q, spec] {
        const UncertaintyReport u = uncertainty_sum(s, q, spec);
        Record r;
        r.put("D", static_cast<long long>(s.dimension));
        r.put("lambda", s.lambda);
        r.put("n", static_cast<long long>(s.n));
        r.put("l", static_cast<long long>(s.l()));
        r.put("q", u.q);
        r.put("p", u.p);
        r.put("sum_exact", u.sum_exact);
        r.put("sum_asym", u.sum_asym);
        r.put("bound", u.renyi_bound);
        r.put("slack", u.renyi_slack);
        r.put("shannon_sum", u.shannon_sum);
        r.put("shannon_bound", u.shannon_bound);
        r.put("shannon_slack", u.shannon_slack);
        return r;
      });
    }
  }
  return {run_ordered(tasks, c.parallelism), {}};
}

struct ConvergeArgs {
  Common c;
  std::string quantity = "renyi_total";
  double k = 2.0;
};

Table cmd_converge(const ConvergeArgs& a) {
  const auto states = resolve_states(a.c);
  if (states.size() < 2) throw UsageError("converge needs at least two grid points (--grid-D)");
  const Space space = space_of(a.c);
  const QuadratureSpec spec = a.c.quad();
  const double q = a.c.q_grid.front();
  std::vector<std::function<Record()>> tasks;
  for (const auto& s : states) {
    tasks.emplace_back([&a, s, q, space, spec] {
      double exact = 0.0;
      double asym = 0.0;
      if (a.quantity == "moment") {
        exact = radial_moment({s, a.k, space, Mode::exact}, spec);
        asym = radial_moment({s, a.k, space, Mode::asymptotic}, spec);
      } else if (a.quantity == "shannon") {
        exact = shannon(s, space, Mode::exact, spec).value;
        asym = shannon(s, space, Mode::asymptotic, spec).value;
      } else {
        const std::string part = a.quantity.substr(std::string("renyi_").size());
        exact = renyi_part(part, s, q, space, Mode::exact, spec).value;
        asym = renyi_part(part, s, q, space, Mode::asymptotic, spec).value;
      }
      Record r;
      r.put("grid_value", static_cast<long long>(s.dimension));
      r.put("exact", exact);
      r.put("asym", asym);
      r.put("rel_err", rel_err(exact, asym));
      return r;
    });
  }
  Table t{run_ordered(tasks, a.c.parallelism), {}};
  std::vector<double> grid;
  std::vector<double> errs;
  for (std::size_t i = 0; i < states.size(); ++i) {
    grid.push_back(states[i].dimension);
    errs.push_back(std::get<double>(t.records[i].fields[3].second));
  }
  attach_slope(t, grid, errs);
  return t;
}

// ---- output ----

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void check_finite(const Table& t) {
  for (const auto& r : t.records) {
    for (const auto& [name, cell] : r.fields) {
      if (const auto* d = std::get_if<double>(&cell); d && !std::isfinite(*d)) {
        throw NonFiniteError("non-finite value in column '" + name + "'");
      }
    }
  }
}

std::string render(const Table& t, const std::string& format, const std::string& provenance) {
  std::ostringstream os;
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["provenance"] = provenance;
    doc["comments"] = t.comments;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : t.records) {
      nlohmann::ordered_json obj;
      for (const auto& [name, cell] : r.fields) {
        std::visit([&obj, &name = name](const auto& v) { obj[name] = v; }, cell);
      }
      doc["records"].push_back(obj);
    }
    os << doc.dump(2) << '\n';
    return os.str();
  }
  os << "# " << provenance << '\n';
  for (const auto& c : t.comments) os << "# " << c << '\n';
  if (!t.records.empty()) {
    const auto& first = t.records.front().fields;
    for (std::size_t i = 0; i < first.size(); ++i) os << (i ? "," : "") << first[i].first;
    os << '\n';
  }
  for (const auto& r : t.records) {
    for (std::size_t i = 0; i < r.fields.size(); ++i) os << (i ? "," : "") << csv_cell(r.fields[i].second);
    os << '\n';
  }
  return os.str();
}

std::string echo_args(const std::vector<std::string>& args, const Common& c) {
  std::string s = "hdosc";
  for (const auto& a : args) {
    s += ' ';
    if (a.find_first_of(" ;\"") != std::string::npos) {
      s += '"' + a + '"';
    } else {
      s += a;
    }
  }
  s += " | tol=" + format_double(c.quad().target_rel_tol);
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments and entropies of D-dimensional harmonic oscillator states", "hdosc"};
  app.require_subcommand(1);

  MomentsArgs moments;
  auto* sub_moments = app.add_subcommand("moments", "Radial expectation values <r^k>, <p^t>");
  add_common(sub_moments, moments.c);
  sub_moments->add_option("--k", moments.k, "Moment orders")->delimiter(',');
  sub_moments->add_option("--space", moments.c.space, "position or momentum");
  sub_moments->add_option("--mode", moments.c.mode)->check(CLI::IsMember({"both", "exact", "asymptotic"}));

  RenyiArgs renyi;
  auto* sub_renyi = app.add_subcommand("renyi", "Renyi entropies");
  add_common(sub_renyi, renyi.c);
  sub_renyi->add_option("--q", renyi.c.q_grid, "Renyi orders")->delimiter(',');
  sub_renyi->add_option("--space", renyi.c.space, "position or momentum");
  sub_renyi->add_option("--mode", renyi.c.mode)->check(CLI::IsMember({"both", "exact", "asymptotic"}));
  sub_renyi->add_option("--part", renyi.part)->check(CLI::IsMember({"radial", "angular", "total"}));

  Common shannon_c;
  auto* sub_shannon = app.add_subcommand("shannon", "Shannon entropies");
  add_common(sub_shannon, shannon_c);
  sub_shannon->add_option("--space", shannon_c.space, "position or momentum");
  sub_shannon->add_option("--mode", shannon_c.mode)->check(CLI::IsMember({"both", "exact", "asymptotic"}));

  AsymArgs asym;
  auto* sub_asym = app.add_subcommand("asym", "Laguerre functional J1: quadrature vs large-alpha expansion");
  add_common(sub_asym, asym.c, false);
  sub_asym->add_option("--sigma", asym.sigma);
  sub_asym->add_option("--rate", asym.rate)->check(CLI::PositiveNumber);
  sub_asym->add_option("--kappa", asym.kappa)->check(CLI::PositiveNumber);
  sub_asym->add_option("--m", asym.m)->check(CLI::NonNegativeNumber);
  sub_asym->add_option("--alpha-grid", asym.alpha_grid)->delimiter(',')->required();
  sub_asym->add_option("--order", asym.order)->check(CLI::IsMember({0, 1}));
  sub_asym->add_option("--near-one-warning", asym.near_one, "Warn when |rate-1| is below this");
  sub_asym->add_option("--d1", asym.d1, "First-order coefficient: published or laplace")
      ->check(CLI::IsMember({"published", "laplace"}));

  Common sums_c;
  auto* sub_sums = app.add_subcommand("sums", "Position-momentum Renyi and Shannon uncertainty sums");
  add_common(sub_sums, sums_c);
  sub_sums->add_option("--q", sums_c.q_grid, "Renyi orders (> 1/2)")->delimiter(',');

  ConvergeArgs conv;
  auto* sub_conv = app.add_subcommand("converge", "Exact vs asymptotic over a D grid with a log-log slope fit");
  add_common(sub_conv, conv.c);
  sub_conv->add_option("--quantity", conv.quantity)
      ->check(CLI::IsMember({"moment", "renyi_radial", "renyi_angular", "renyi_total", "shannon"}));
  sub_conv->add_option("--q", conv.c.q_grid, "Renyi order")->delimiter(',');
  sub_conv->add_option("--k", conv.k, "Moment order");
  sub_conv->add_option("--space", conv.c.space, "position or momentum");

  std::vector<const char*> argv{"hdosc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Table table;
  const Common* common = nullptr;
  try {
    if (sub_moments->parsed()) {
      common = &moments.c;
      table = cmd_moments(moments);
    } else if (sub_renyi->parsed()) {
      common = &renyi.c;
      table = cmd_renyi(renyi);
    } else if (sub_shannon->parsed()) {
      common = &shannon_c;
      table = cmd_shannon(shannon_c);
    } else if (sub_asym->parsed()) {
      common = &asym.c;
      table = cmd_asym(asym);
    } else if (sub_sums->parsed()) {
      common = &sums_c;
      table = cmd_sums(sums_c);
    } else {
      common = &conv.c;
      table = cmd_converge(conv);
    }
    check_finite(table);
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const NonFiniteError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string text = render(table, common->format, echo_args(args, *common));
  if (common->out.empty()) {
    out << text;
  } else {
    std::ofstream file(common->out);
    if (!file) {
      err << "error: cannot open " << common->out << " for writing\n";
      return kExitUsage;
    }
    file << text;
  }
  return kExitOk;
}

}  // namespace hdosc
