#include "conflab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>

#include "conflab/checks.hpp"
#include "conflab/output.hpp"
#include "conflab/spectral.hpp"
#include "conflab/text.hpp"
#include "conflab/transfer.hpp"

namespace conflab::cli {

namespace {

using output::CsvTable;
using output::number;

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
};

struct ProjectOpts {
  std::string map = "moebius";
  std::string map_spec;
  std::string op = "S";
  std::string input = "mode:n=1";
  std::size_t m = 256;
  int radial = 32;
  int angular = 64;
  int degree = -1;
};

struct ApcharOpts {
  std::string weight;
  std::string p_grid;
  int depth = FamilyParams{}.depth;
  int lattice = FamilyParams{}.lattice;
  double window = FamilyParams{}.window;
};

struct RangeOpts {
  std::optional<double> lipschitz;
  bool local_graph = false;
};

struct NormscanOpts {
  std::string op = "S0";
  std::string weight;
  std::string p_grid = "2";
  std::size_t m = 1024;
  int n = 16;
  BatteryParams battery;
};

struct DiffspecOpts {
  std::string map = "holder";
  std::string map_spec;
  int n = 32;
  std::size_t m = 0;
  int radial = 0;
  int angular = 0;
  bool no_direct = false;
};

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : text::split(s, ',')) {
    const std::string t = text::trim(tok);
    if (!t.empty()) out.push_back(text::parse_double(t, "p-grid entry"));
  }
  if (out.empty()) throw ValidationError("empty p-grid");
  return out;
}

// Reads key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = text::trim(line.substr(0, eq));
    if (key.empty() || key[0] == '-') throw ValidationError(path + ":" + std::to_string(lineno) + ": bad key");
    if (seen[key]++) throw ValidationError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    out.emplace_back(std::move(key), text::trim(line.substr(eq + 1)));
  }
  return out;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Appends config entries as --key=value unless the flag was given.
std::vector<std::string> merge_config(std::vector<std::string> args, std::set<std::string>& config_keys) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  for (const auto& [key, value] : read_config(path)) {
    config_keys.insert("--" + key);
    if (!has_flag(args, "--" + key)) args.push_back("--" + key + "=" + value);
  }
  return args;
}

std::filesystem::path out_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("CONFLAB_OUT_DIR"); env && *env) return env;
  return {};
}

std::string header(const std::string& sub, const Common& c) {
  return "conflab " + sub + " seed=" + std::to_string(c.seed);
}

nlohmann::json to_json(const CsvTable& t, const std::string& sub, const Common& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows()) {
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(r[i].c_str(), &end);
      if (!r[i].empty() && end && *end == '\0' && std::isfinite(v)) {
        row[t.columns()[i]] = v;
      } else {
        row[t.columns()[i]] = r[i];
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"subcommand", sub}, {"seed", c.seed}, {"rows", std::move(rows)}};
}

void emit_table(const CsvTable& t, const std::string& sub, const Common& c) {
  const auto dir = out_dir(c);
  if (dir.empty()) return;
  t.write(dir / (sub + ".csv"), header(sub, c));
  output::write_text(dir / (sub + ".json"), to_json(t, sub, c).dump(2) + "\n");
}

void emit_series(const output::Series& s, const std::string& name, const std::string& sub, const Common& c) {
  const auto dir = out_dir(c);
  if (dir.empty()) return;
  output::emit_plot_data(s, dir / (name + ".csv"), header(sub, c));
}

std::string fmt(double x) { return std::isnan(x) ? "nan" : number(x); }

ConformalMap resolve_map(const std::string& name, const std::string& spec) {
  return spec.empty() ? named_map(name) : parse_map(spec);
}

// -- project ------------------------------------------------------------------

struct InputSpec {
  std::string kind;
  int n = 0;
  int band = 4;
};

InputSpec parse_input(const std::string& s) {
  InputSpec in;
  const auto colon = s.find(':');
  in.kind = s.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& tok : text::split(s.substr(colon + 1), ',')) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ValidationError("input: expected key=value in '" + s + "'");
      kv[text::trim(tok.substr(0, eq))] = text::trim(tok.substr(eq + 1));
    }
  }
  auto take = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) return std::optional<std::string>{};
    std::string v = it->second;
    kv.erase(it);
    return std::optional<std::string>{v};
  };
  if (in.kind == "mode") {
    in.n = static_cast<int>(text::parse_int(take("n").value_or("1"), "n"));
  } else if (in.kind == "random") {
    in.band = static_cast<int>(text::parse_int(take("band").value_or("4"), "band"));
    if (in.band < 0) throw ValidationError("input: band must be nonnegative");
  } else if (in.kind != "conj") {
    throw ValidationError("input: unknown kind '" + in.kind + "' (mode, conj, random)");
  }
  if (!kv.empty()) throw ValidationError("input: unknown key '" + kv.begin()->first + "'");
  return in;
}

int cmd_project(const ProjectOpts& o, const Common& c, std::ostream& out) {
  const ConformalMap map = resolve_map(o.map, o.map_spec);
  const InputSpec in = parse_input(o.input);
  std::mt19937_64 rng(output::stage_seed(c.seed, 0));
  std::normal_distribution<double> g;
  std::vector<std::pair<int, int>> terms;  // z^j conj(z)^k
  std::vector<cd> weights;
  if (in.kind == "mode") {
    terms.push_back(in.n >= 0 ? std::pair{in.n, 0} : std::pair{0, -in.n});
    weights.push_back(1.0);
  } else if (in.kind == "conj") {
    terms.push_back({0, 1});
    weights.push_back(1.0);
  } else {
    for (int j = 0; j <= in.band; ++j) {
      for (int k = 0; j + k <= in.band; ++k) {
        terms.push_back({j, k});
        weights.push_back(cd(g(rng), g(rng)));
      }
    }
  }
  auto eval = [&](cd z) {
    cd acc = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      acc += weights[i] * std::pow(z, terms[i].first) * std::pow(std::conj(z), terms[i].second);
    }
    return acc;
  };

  CsvTable table({"index", "re", "im"});
  double norm_in = 0.0;
  double norm_out = 0.0;
  double residual = std::nan("");
  CVec values;
  if (o.op == "S" || o.op == "P") {
    const auto f = DomainFunction::boundary(
        map, CircleFunction::from_function(o.m, [&](double t) { return eval(std::polar(1.0, t)); }));
    norm_in = domain_norm(f, 2.0);
    if (o.op == "S") {
      const DomainFunction s = szego_domain(f);
      norm_out = domain_norm(s, 2.0);
      const CVec twice = szego_domain(s).boundary_values().samples();
      residual = (twice - s.boundary_values().samples()).cwiseAbs().maxCoeff();
      values = s.boundary_values().samples();
    } else {
      const DomainFunction p = poisson_domain(f, make_grid(o.radial, o.angular));
      norm_out = domain_norm(p, 2.0);
      values = p.interior_values().values();
    }
  } else if (o.op == "B") {
    const int degree = o.degree >= 0 ? o.degree : o.angular / 2 - 1;
    const GridPtr grid = make_grid(o.radial, o.angular);
    const auto f = DomainFunction::interior(map, DiscFunction::from_function(grid, eval));
    norm_in = domain_norm(f, 2.0);
    const DomainFunction b = bergman_domain(f, degree);
    norm_out = domain_norm(b, 2.0);
    const CVec twice = bergman_domain(b, degree).interior_values().values();
    residual = (twice - b.interior_values().values()).cwiseAbs().maxCoeff();
    values = b.interior_values().values();
  } else {
    throw ValidationError("project: --op must be S, B or P");
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    table.add_row({std::to_string(i), number(values(i).real()), number(values(i).imag())});
  }
  out << "operator " << o.op << "\nmap " << map.describe() << "\ninput " << o.input << "\n";
  out << "norm_in " << text::format_double(norm_in) << "\nnorm_out " << text::format_double(norm_out) << "\n";
  if (!std::isnan(residual)) out << "idempotency_residual " << text::format_double(residual) << "\n";
  emit_table(table, "project", c);
  return 0;
}

// -- apchar -------------------------------------------------------------------

WeightSpec build_weight(const WeightQuery& q, double p) {
  if (q.kind == "power") return WeightSpec::power(q.domain, q.center, q.a, q.scale);
  if (q.kind == "pullback") {
    ConformalMap m = named_map(q.map);
    const WeightDomain d = m.domain() == ModelDomain::disc ? WeightDomain::circle : WeightDomain::line;
    return WeightSpec::pullback(std::move(m), q.s, d);
  }
  return example_domain_pullback_weight(p);
}

std::vector<double> p_values(const WeightQuery& q, const std::string& grid) {
  if (!grid.empty()) return parse_grid(grid);
  if (!q.p) throw ValidationError("no exponent: give p in the weight or --p-grid");
  return {*q.p};
}

int cmd_apchar(const ApcharOpts& o, const Common& c, std::ostream& out) {
  const WeightQuery q = parse_weight_query(o.weight);
  FamilyParams fp;
  fp.depth = o.depth;
  fp.lattice = o.lattice;
  fp.window = o.window;
  if (fp.depth < 0 || fp.lattice < 1 || !(fp.window > 0.0)) throw ValidationError("apchar: bad family parameters");
  CsvTable table({"weight", "p", "characteristic", "detail"});
  output::Series series;
  for (double p : p_values(q, o.p_grid)) {
    double value = 0.0;
    std::string detail;
    if (q.kind == "example") {
      const ExampleCharacteristic e = example_domain_characteristic(p, fp);
      value = e.combined;
      detail = "n1=" + number(e.n1) + ";n2=" + number(e.n2) + ";reference=" + number(e.reference) +
               ";argmax=" + e.n1_argmax;
    } else {
      const CharacteristicReport r = ap_characteristic(build_weight(q, p), p, fp);
      value = r.value;
      detail = "center=" + number(r.argmax_center) + ";radius=" + number(r.argmax_radius) +
               ";family=" + std::to_string(r.family_size);
    }
    table.add_row({q.text, number(p), number(value), detail});
    series.x.push_back(p);
    series.y.push_back(value);
    out << "p=" << text::format_double(p) << " characteristic " << text::format_double(value) << "\n";
  }
  emit_table(table, "apchar", c);
  emit_series(series, "apchar_plot", "apchar", c);
  return 0;
}

// -- range ----------------------------------------------------------------------

int cmd_range(const RangeOpts& o, const Common& c, std::ostream& out) {
  if (o.lipschitz.has_value() == o.local_graph) throw ValidationError("range: give exactly one of --lipschitz, --local-graph");
  const DomainClass dc = o.local_graph ? DomainClass::local_graph() : DomainClass::lipschitz(*o.lipschitz);
  const Range r = admissible_range(dc);
  out << format_range(r) << "\n";
  CsvTable table({"domain_class", "lo", "hi"});
  table.add_row({o.local_graph ? "local_graph" : "lipschitz:" + text::format_double(*o.lipschitz), number(r.lo),
                 number(r.hi)});
  emit_table(table, "range", c);
  return 0;
}

// -- normscan -------------------------------------------------------------------

int cmd_normscan(const NormscanOpts& o, const Common& c, std::ostream& out) {
  const std::vector<double> ps = parse_grid(o.p_grid);
  CsvTable table({"operator", "N", "p", "lower", "upper", "witness_id"});
  output::Series series;
  std::optional<WeightQuery> q;
  if (!o.weight.empty()) {
    q = parse_weight_query(o.weight);
    if (o.op != "S0") throw ValidationError("normscan: weighted scans support --operator S0 only");
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double p = ps[i];
    BatteryParams bp = o.battery;
    bp.seed = output::stage_seed(c.seed, i);
    NormEstimate e;
    std::string name;
    std::size_t n = 0;
    if (q) {
      const WeightSpec nu = build_weight(*q, p);
      if (nu.domain() != WeightDomain::circle) throw ValidationError("normscan: circle weight required");
      const double ch = q->kind == "example" ? example_domain_characteristic(p).combined : ap_characteristic(nu, p).value;
      e = norm_estimate_lp(szego_sampled(o.m, &nu), p, bp, &nu, szego_norm_upper(p, ch));
      name = "S0[" + q->text + "]";
      n = o.m;
    } else {
      e = norm_estimate_lp(discretize(o.op, o.n), p, bp);
      name = o.op;
      n = static_cast<std::size_t>(o.n);
    }
    table.add_row({name, std::to_string(n), number(p), number(e.lower), fmt(e.upper), e.witness_id});
    series.x.push_back(p);
    series.y.push_back(e.lower);
    out << "p=" << text::format_double(p) << " lower " << text::format_double(e.lower) << " upper "
        << (std::isnan(e.upper) ? "nan" : text::format_double(e.upper)) << " (" << e.upper_method << ") witness "
        << e.witness_id << "\n";
  }
  emit_table(table, "normscan", c);
  emit_series(series, "normscan_plot", "normscan", c);
  return 0;
}

// -- diffspec -------------------------------------------------------------------

int cmd_diffspec(const DiffspecOpts& o, const Common& c, std::ostream& out) {
  if (o.n < 1) throw ValidationError("diffspec: N must be positive");
  DifferenceConfig cfg;
  cfg.band = o.n;
  cfg.angular = o.angular > 0 ? o.angular : std::max(256, 4 * o.n);
  cfg.radial = o.radial > 0 ? o.radial : cfg.angular / 2;
  if (o.m > 0) {
    cfg.m = o.m;
  } else {
    cfg.m = 4096;
    while (cfg.m < static_cast<std::size_t>(2 * cfg.angular)) cfg.m *= 2;
  }
  cfg.direct = !o.no_direct;
  const DifferenceOperator d = difference_operator(resolve_map(o.map, o.map_spec), cfg);
  const Eigen::VectorXd s = singular_values(d.decomposition);
  CsvTable table({"index", "singular_value"});
  output::Series series;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    table.add_row({std::to_string(i + 1), number(s(i))});
    series.x.push_back(static_cast<double>(i + 1));
    series.y.push_back(s(i));
  }
  out << "max_singular_value " << text::format_double(s(0)) << "\n";
  if (s(0) > 0.0) out << "ratio_half " << text::format_double(s(o.n / 2) / s(0)) << "\n";
  if (cfg.direct) out << "two_path_gap " << text::format_double(d.two_path_gap) << "\n";
  emit_table(table, "diffspec", c);
  emit_series(series, "diffspec_plot", "diffspec", c);
  return 0;
}

// -- checks -----------------------------------------------------------------------

int cmd_checks(const Common& c, std::ostream& out) {
  CsvTable table({"name", "passed", "value", "limit", "detail"});
  bool all = true;
  for (const CheckResult& r : run_invariant_suite(c.seed)) {
    all = all && r.passed;
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    table.add_row({r.name, r.passed ? "1" : "0", number(r.value), number(r.limit), detail});
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << text::format_double(r.value)
        << " (limit " << text::format_double(r.limit) << ")" << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
  }
  emit_table(table, "checks", c);
  return all ? 0 : 2;
}

}  // namespace

WeightQuery parse_weight_query(const std::string& text_in) {
  WeightQuery q;
  q.text = text::trim(text_in);
  const auto colon = q.text.find(':');
  q.kind = q.text.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& tok : text::split(q.text.substr(colon + 1), ',')) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ValidationError("weight: expected key=value, got '" + tok + "'");
      const std::string key = text::trim(tok.substr(0, eq));
      if (!kv.emplace(key, text::trim(tok.substr(eq + 1))).second) {
        throw ValidationError("weight: duplicate key '" + key + "'");
      }
    }
  }
  auto take = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) return std::optional<std::string>{};
    std::string v = it->second;
    kv.erase(it);
    return std::optional<std::string>{v};
  };
  if (auto p = take("p")) q.p = text::parse_double(*p, "p");
  if (q.kind == "power") {
    q.a = text::parse_double(take("a").value_or("0"), "a");
    q.center = text::parse_double(take("center").value_or("0"), "center");
    q.scale = text::parse_double(take("scale").value_or("1"), "scale");
    const std::string d = take("domain").value_or("circle");
    if (d == "circle") {
      q.domain = WeightDomain::circle;
    } else if (d == "line") {
      q.domain = WeightDomain::line;
    } else {
      throw ValidationError("weight: domain must be circle or line");
    }
  } else if (q.kind == "pullback") {
    auto m = take("map");
    if (!m) throw ValidationError("weight: pullback needs map=NAME");
    q.map = *m;
    q.s = text::parse_double(take("s").value_or("1"), "s");
  } else if (q.kind != "example") {
    throw ValidationError("weight: unknown kind '" + q.kind + "' (power, pullback, example)");
  }
  if (!kv.empty()) throw ValidationError("weight: unknown key '" + kv.begin()->first + "'");
  return q;
}

std::string format_range(const Range& r) {
  return "(" + text::format_double(r.lo) + ", " + text::format_double(r.hi) + ")";
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"conflab: conformal transfer, weights and spectral diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "experiment seed")->capture_default_str();
  app.add_option("--out", common.out, "output directory (default $CONFLAB_OUT_DIR)");
  app.add_option("--config", common.config, "key=value configuration file; flags win");

  ProjectOpts po;
  auto* project = app.add_subcommand("project", "apply S, B or P on a mapped domain");
  project->add_option("--map", po.map, "catalog map name")->capture_default_str();
  project->add_option("--map-spec", po.map_spec, "map in text form (overrides --map)");
  project->add_option("--op", po.op, "S, B or P")->capture_default_str();
  project->add_option("--input", po.input, "mode:n=K, conj or random:band=B")->capture_default_str();
  project->add_option("--M", po.m, "circle samples")->capture_default_str();
  project->add_option("--radial", po.radial, "disc grid radial nodes")->capture_default_str();
  project->add_option("--angular", po.angular, "disc grid angular nodes")->capture_default_str();
  project->add_option("--degree", po.degree, "Bergman truncation (default angular/2 - 1)");

  ApcharOpts ao;
  auto* apchar = app.add_subcommand("apchar", "A_p characteristics of weights");
  apchar->add_option("--weight", ao.weight, "weight description")->required();
  apchar->add_option("--p-grid", ao.p_grid, "comma-separated exponents");
  apchar->add_option("--depth", ao.depth, "dyadic depth")->capture_default_str();
  apchar->add_option("--lattice", ao.lattice, "lattice centers per radius")->capture_default_str();
  apchar->add_option("--window", ao.window, "line search half-width")->capture_default_str();

  RangeOpts ro;
  double lipschitz = 0.0;
  auto* range = app.add_subcommand("range", "corollary exponent ranges");
  auto* lip_opt = range->add_option("--lipschitz", lipschitz, "Lipschitz constant M");
  range->add_flag("--local-graph", ro.local_graph, "local graph domains");

  NormscanOpts no;
  auto* normscan = app.add_subcommand("normscan", "L^p norm estimates over a p-grid");
  normscan->add_option("--operator", no.op, "identity, S0, B0, P0 or shift")->capture_default_str();
  normscan->add_option("--weight", no.weight, "weight for S0 in L^p_nu");
  normscan->add_option("--p-grid", no.p_grid, "comma-separated exponents")->capture_default_str();
  normscan->add_option("--M", no.m, "circle samples for weighted scans")->capture_default_str();
  normscan->add_option("--N", no.n, "truncation for catalog operators")->capture_default_str();
  normscan->add_option("--random-count", no.battery.random_count)->capture_default_str();
  normscan->add_option("--random-band", no.battery.random_band)->capture_default_str();
  normscan->add_option("--arc-levels", no.battery.arc_levels)->capture_default_str();
  normscan->add_option("--arc-centers", no.battery.arc_centers)->capture_default_str();
  normscan->add_option("--witness-levels", no.battery.witness_levels)->capture_default_str();
  normscan->add_option("--iterations", no.battery.power_iterations)->capture_default_str();
  normscan->add_option("--epsilon", no.battery.epsilon)->capture_default_str();

  DiffspecOpts dop;
  auto* diffspec = app.add_subcommand("diffspec", "singular values of BP - PS");
  diffspec->add_option("--map", dop.map, "catalog map name")->capture_default_str();
  diffspec->add_option("--map-spec", dop.map_spec, "map in text form (overrides --map)");
  diffspec->add_option("--N", dop.n, "source band")->capture_default_str();
  diffspec->add_option("--M", dop.m, "circle samples (default max(4096, 2K))");
  diffspec->add_option("--radial", dop.radial, "radial nodes (default K/2)");
  diffspec->add_option("--angular", dop.angular, "angular nodes K (default max(256, 4N))");
  diffspec->add_flag("--no-direct", dop.no_direct, "skip the direct assembly");

  auto* checks = app.add_subcommand("checks", "invariant suite");

  try {
    std::set<std::string> config_keys;
    std::vector<std::string> args = merge_config(args_in, config_keys);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ExtrasError& e) {
      for (const auto& key : config_keys) {
        if (std::string(e.what()).find(key) != std::string::npos) {
          throw ValidationError("unknown configuration key '" + key.substr(2) + "'");
        }
      }
      throw;
    }
    if (lip_opt->count() > 0) ro.lipschitz = lipschitz;

    if (*project) return cmd_project(po, common, out);
    if (*apchar) return cmd_apchar(ao, common, out);
    if (*range) return cmd_range(ro, common, out);
    if (*normscan) return cmd_normscan(no, common, out);
    if (*diffspec) return cmd_diffspec(dop, common, out);
    if (*checks) return cmd_checks(common, out);
    return 1;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace conflab::cli
