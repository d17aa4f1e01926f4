// girthlab: spectral-noise laboratory for random walk in mildly random
// environment on transitive graphs. Subcommands cover graph construction,
// environment sampling, exact spectral functionals, covariance tables, the
// closed-form tree kernel, and Monte Carlo campaigns.

#include <chrono>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "girthlab/covariance.hpp"
#include "girthlab/environment.hpp"
#include "girthlab/experiments.hpp"
#include "girthlab/functionals.hpp"
#include "girthlab/graphs.hpp"
#include "girthlab/treeform.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace girthlab;

namespace {

constexpr const char* kVersion = "0.1.0";

// --- small utilities -------------------------------------------------------

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Accepts "0.3", "-0.4", "0.5+0.2i", "0.5-0.2i", "0.2i".
std::complex<double> parse_complex(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  double re = 0.0, im = 0.0;
  if (s.back() == 'i' || s.back() == 'j') {
    s.pop_back();
    // Split at the last +/- that is not an exponent sign or leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    if (split == std::string::npos) {
      im = s.empty() ? 1.0 : std::stod(s);
    } else {
      re = std::stod(s.substr(0, split));
      const std::string imag_part = s.substr(split);
      im = (imag_part == "+") ? 1.0 : (imag_part == "-") ? -1.0 : std::stod(imag_part);
    }
  } else {
    re = std::stod(s);
  }
  return {re, im};
}

struct OutputSink {
  std::string path;  // empty: stdout
  std::vector<std::pair<std::string, std::string>> written;  // (path, content)

  void write(const std::string& content) {
    if (path.empty()) {
      std::cout << content;
      if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot open output file: " + path);
      out << content;
      written.emplace_back(path, content);
    }
  }
  void write_to(const std::string& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + file);
    out << content;
    written.emplace_back(file, content);
  }
};

void write_manifest(const OutputSink& sink, const std::string& command,
                    const std::vector<std::string>& args, std::uint64_t seed, double ms,
                    const json& resolved) {
  if (sink.path.empty() || sink.written.empty()) return;
  json manifest;
  manifest["tool"] = "girthlab";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["arguments"] = args;
  manifest["config"] = resolved;
  manifest["master_seed"] = seed;
  manifest["timing_ms"] = ms;
  json outputs = json::array();
  for (const auto& [path, content] : sink.written) {
    outputs.push_back(
        {{"path", path}, {"bytes", content.size()}, {"fnv1a64", hex64(fnv1a64(content))}});
  }
  manifest["outputs"] = outputs;
  std::ofstream out(sink.path + ".manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

PowerSeries parse_series_flag(const std::string& text, double radius, double tail) {
  // "coeffs=0,0,1" or a bare coefficient list.
  std::string coeffs = text;
  if (coeffs.rfind("coeffs=", 0) == 0) coeffs = coeffs.substr(7);
  std::vector<double> values;
  std::string item;
  std::istringstream in{coeffs};
  while (std::getline(in, item, ',')) values.push_back(std::stod(item));
  return PowerSeries(std::move(values), radius, tail);
}

std::string sampler_spec_from_flags(const std::string& sampler, const std::string& base) {
  return base.empty() ? sampler : sampler + " base=" + base;
}

// --- mc config file --------------------------------------------------------

struct McFileConfig {
  ExperimentConfig experiment;
  json resolved;
};

McFileConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read config file: " + path);
  McFileConfig out;
  ExperimentConfig& cfg = out.experiment;
  json functions = json::array();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "graph") {
      cfg.graph_spec = value;
    } else if (key == "sampler") {
      cfg.sampler_spec = value;
    } else if (key == "samples") {
      cfg.samples = std::stoll(value);
    } else if (key == "seed") {
      cfg.master_seed = std::stoull(value);
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else if (key == "allow_ungated") {
      cfg.allow_ungated = (value == "true" || value == "1");
    } else if (key == "tree_reference") {
      cfg.tree_reference = (value == "true" || value == "1");
    } else if (key == "eps") {
      std::istringstream list{value};
      std::string item;
      while (std::getline(list, item, ',')) cfg.eps_list.push_back(std::stod(item));
    } else if (key == "function") {
      FunctionSpec f;
      double radius = std::numeric_limits<double>::infinity();
      double tail = 0.0;
      std::string coeffs;
      std::istringstream tokens{value};
      std::string token;
      while (tokens >> token) {
        if (token.rfind("name=", 0) == 0)
          f.name = token.substr(5);
        else if (token.rfind("coeffs=", 0) == 0)
          coeffs = token.substr(7);
        else if (token.rfind("squared=", 0) == 0)
          f.squared = (token.substr(8) == "true" || token.substr(8) == "1");
        else if (token.rfind("radius=", 0) == 0)
          radius = std::stod(token.substr(7));
        else if (token.rfind("tail=", 0) == 0)
          tail = std::stod(token.substr(5));
        else
          throw std::invalid_argument("config line " + std::to_string(line_no) +
                                      ": unknown function token '" + token + "'");
      }
      if (coeffs.empty())
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": function needs coeffs=");
      f.series = parse_series_flag(coeffs, radius, tail);
      if (f.name.empty()) f.name = "f" + std::to_string(functions.size());
      functions.push_back({{"name", f.name},
                           {"coeffs", coeffs},
                           {"squared", f.squared},
                           {"radius", radius == std::numeric_limits<double>::infinity()
                                          ? json("inf")
                                          : json(radius)}});
      cfg.functions.push_back(std::move(f));
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
  }
  out.resolved = {{"graph", cfg.graph_spec},      {"sampler", cfg.sampler_spec},
                  {"samples", cfg.samples},       {"seed", cfg.master_seed},
                  {"threads", cfg.threads},       {"allow_ungated", cfg.allow_ungated},
                  {"tree_reference", cfg.tree_reference}, {"eps", cfg.eps_list},
                  {"functions", functions}};
  return out;
}

json campaign_result_json(const CampaignResult& r) {
  json out;
  out["graph"] = r.graph_id;
  out["sampler"] = r.sampler_id;
  out["n"] = r.n_vertices;
  out["d"] = r.degree;
  out["girth"] = r.girth == kGirthAcyclic ? json("acyclic") : json(r.girth);
  out["gates"] = {{"cap", r.gates.cap},
                  {"mean_exact", r.gates.mean_exact},
                  {"tree_exact", r.gates.tree_exact},
                  {"finite_girth", r.gates.finite_girth}};
  out["ungated"] = r.ungated;
  out["samples"] = r.samples;
  out["master_seed"] = r.master_seed;
  json stats = json::array();
  for (const FunctionStats& s : r.stats) {
    stats.push_back({{"function", s.name},
                     {"degree", s.degree},
                     {"mean", s.mean},
                     {"variance", s.variance},
                     {"std_error", s.std_error},
                     {"skewness", s.skewness},
                     {"excess_kurtosis", s.excess_kurtosis},
                     {"ks_stat", s.ks_stat},
                     {"ks_p", s.ks_p},
                     {"degenerate", s.degenerate},
                     {"max_abs", s.max_abs},
                     {"star_norm_bound", s.bound}});
  }
  out["stats"] = stats;
  out["covariance"] = r.covariance;
  out["covariance_se"] = r.covariance_se;
  json refs = json::array();
  for (const PairReference& ref : r.references) {
    refs.push_back({{"fi", ref.fi},
                    {"fj", ref.fj},
                    {"source", ref.source},
                    {"empirical", ref.empirical},
                    {"reference", ref.reference},
                    {"std_error", ref.std_error},
                    {"z", std::isfinite(ref.z) ? json(ref.z) : json("inf")},
                    {"gated", ref.gated},
                    {"note", ref.note}});
  }
  out["references"] = refs;
  json checks = json::array();
  for (const CriterionCheck& c : r.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
  out["checks"] = checks;
  json sweeps = json::array();
  for (const EpsSweep& sweep : r.eps_sweeps)
    sweeps.push_back({{"function", sweep.function},
                      {"eps", sweep.eps},
                      {"mean_abs_gap", sweep.mean_abs_gap},
                      {"slope", sweep.slope}});
  out["eps_sweeps"] = sweeps;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"girthlab: spectral noise of random walks in random environment"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::vector<std::string> raw_args(argv + 1, argv + argc);

  std::string out_path;
  app.add_option("--out", out_path, "write the primary output to this file (plus a manifest)")
      ->capture_default_str();

  // graph [info]
  auto* graph_cmd = app.add_subcommand("graph", "print n, d, girth of a graph as JSON");
  std::string graph_info = "info";
  graph_cmd->add_option("action", graph_info, "action (info)")
      ->check(CLI::IsMember({"info"}));
  std::string g_family, g_name, g_gens = "standard", g_spec;
  std::int64_t g_n = 0;
  int g_p = 0;
  graph_cmd->add_option("--family", g_family, "cycle | lcf | cayley | tree");
  graph_cmd->add_option("--n", g_n, "cycle length");
  graph_cmd->add_option("--name", g_name, "lcf catalog name");
  graph_cmd->add_option("--p", g_p, "cayley modulus (odd prime)");
  graph_cmd->add_option("--gens", g_gens, "cayley generator set (standard)");
  graph_cmd->add_option("--spec", g_spec, "full graph spec string, e.g. 'cycle n=200'");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw one perturbation and dump it as CSV");
  std::string s_graph, s_sampler = "antisym", s_base;
  std::uint64_t s_seed = 1;
  sample_cmd->add_option("--graph", s_graph, "graph spec")->required();
  sample_cmd->add_option("--sampler", s_sampler, "antisym | balanced | permvec");
  sample_cmd->add_option("--base-vector", s_base, "permvec base, comma separated");
  sample_cmd->add_option("--seed", s_seed, "perturbation seed");

  // tfun
  auto* tfun_cmd = app.add_subcommand("tfun", "evaluate T_G(f) (and optionally m_eps)");
  std::string t_graph, t_sampler = "antisym", t_base, t_coeffs;
  std::uint64_t t_seed = 1;
  double t_radius = std::numeric_limits<double>::infinity();
  double t_tail = 0.0;
  std::vector<double> t_eps;
  tfun_cmd->add_option("--graph", t_graph, "graph spec")->required();
  tfun_cmd->add_option("--sampler", t_sampler, "sampler kind");
  tfun_cmd->add_option("--base-vector", t_base, "permvec base");
  tfun_cmd->add_option("--seed", t_seed, "perturbation seed");
  tfun_cmd->add_option("--f", t_coeffs, "series, e.g. coeffs=0,0,1")->required();
  tfun_cmd->add_option("--radius", t_radius, "declared convergence radius");
  tfun_cmd->add_option("--tail-norm", t_tail, "star norm of the truncated tail");
  tfun_cmd->add_option("--eps", t_eps, "also evaluate m_eps at these eps values");

  // alpha
  auto* alpha_cmd = app.add_subcommand("alpha", "emit the alpha table as JSON");
  std::string a_graph, a_sampler = "antisym", a_base;
  int a_imax = 8;
  int a_tree_d = 0, a_tree_depth = 0;
  alpha_cmd->add_option("--graph", a_graph, "graph spec (omit when using --tree-d)");
  alpha_cmd->add_option("--sampler", a_sampler, "sampler kind");
  alpha_cmd->add_option("--base-vector", a_base, "permvec base");
  alpha_cmd->add_option("--imax", a_imax, "degree cap")->check(CLI::Range(2, 16));
  alpha_cmd->add_option("--tree-d", a_tree_d, "infinite-tree degree (alternative to --graph)");
  alpha_cmd->add_option("--tree-depth", a_tree_depth, "optional explicit truncation depth");

  // hform
  auto* hform_cmd = app.add_subcommand("hform", "evaluate H(f,g) from an alpha table");
  std::string h_table, h_f, h_g;
  hform_cmd->add_option("--table", h_table, "alpha table JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  hform_cmd->add_option("--f", h_f, "first series coefficients")->required();
  hform_cmd->add_option("--g", h_g, "second series coefficients")->required();

  // kernel-grid
  auto* grid_cmd = app.add_subcommand("kernel-grid", "emit beta_d on a grid as CSV");
  double k_d = 3.0;
  int k_nx = 200, k_ny = 200;
  grid_cmd->add_option("--d", k_d, "tree degree (real, > 2)")->required();
  grid_cmd->add_option("--nx", k_nx, "grid points in x")->check(CLI::Range(1, 5000));
  grid_cmd->add_option("--ny", k_ny, "grid points in y")->check(CLI::Range(1, 5000));

  // density
  auto* density_cmd = app.add_subcommand("density", "emit the limiting density as CSV");
  double dd = 3.0;
  int d_points = 500;
  density_cmd->add_option("--d", dd, "tree degree (integer >= 2)")->required();
  density_cmd->add_option("--points", d_points, "sample points")->check(CLI::Range(2, 100000));

  // verify stieltjes
  auto* verify_cmd = app.add_subcommand("verify", "check a closed-form identity");
  verify_cmd->require_subcommand(1);
  auto* stieltjes_cmd = verify_cmd->add_subcommand("stieltjes", "Stieltjes-transform identity");
  double v_d = 3.0;
  std::string v_lambda = "0.3", v_mu = "0.5";
  double v_tol = 1e-8, v_max_residual = 1e-6;
  stieltjes_cmd->add_option("--d", v_d, "tree degree (> 2)")->required();
  stieltjes_cmd->add_option("--lambda", v_lambda, "complex, e.g. 0.5+0.2i");
  stieltjes_cmd->add_option("--mu", v_mu, "complex");
  stieltjes_cmd->add_option("--tol", v_tol, "quadrature tolerance");
  stieltjes_cmd->add_option("--max-residual", v_max_residual, "acceptance threshold");

  // mc
  auto* mc_cmd = app.add_subcommand("mc", "run a Monte Carlo campaign from a config file");
  std::string mc_config, mc_dump;
  std::uint64_t mc_seed_override = 0;
  bool mc_has_seed = false;
  int mc_threads_override = -1;
  mc_cmd->add_option("--config", mc_config, "campaign config file")
      ->required()
      ->check(CLI::ExistingFile);
  mc_cmd->add_option("--dump-samples", mc_dump, "also write raw per-sample values as CSV");
  mc_cmd->add_option("--seed", mc_seed_override, "override the config master seed")
      ->each([&](const std::string&) { mc_has_seed = true; });
  mc_cmd->add_option("--threads", mc_threads_override, "override the config worker count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  OutputSink sink;
  sink.path = out_path;
  std::uint64_t manifest_seed = 0;
  json resolved;

  try {
    if (*graph_cmd) {
      Graph g;
      if (!g_spec.empty()) {
        g = build_graph(g_spec);
      } else if (g_family == "cycle") {
        g = build_cycle(g_n);
      } else if (g_family == "lcf") {
        g = build_lcf(lcf_catalog_entry(g_name));
      } else if (g_family == "cayley") {
        if (g_gens != "standard")
          throw std::invalid_argument("only gens=standard is available");
        g = build_cayley(g_p, standard_cayley_generators());
      } else if (g_family == "tree") {
        throw std::invalid_argument("graph info: use --spec 'tree d=.. depth=..'");
      } else {
        throw std::invalid_argument("graph info: give --spec or --family");
      }
      json out = {{"n", g.n}, {"d", g.d}, {"girth", g.girth}};
      resolved = out;
      sink.write(out.dump());
    } else if (*sample_cmd) {
      const Graph g = build_graph(s_graph);
      const EnvironmentSampler smp = make_sampler(sampler_spec_from_flags(s_sampler, s_base), g.d);
      const Perturbation b = sample(smp, g, s_seed);
      std::ostringstream csv;
      write_perturbation_csv(b, csv);
      manifest_seed = s_seed;
      resolved = {{"graph", s_graph}, {"sampler", smp.id}, {"seed", s_seed}};
      sink.write(csv.str());
    } else if (*tfun_cmd) {
      const Graph g = build_graph(t_graph);
      const EnvironmentSampler smp = make_sampler(sampler_spec_from_flags(t_sampler, t_base), g.d);
      const Perturbation b = sample(smp, g, t_seed);
      const PowerSeries f = parse_series_flag(t_coeffs, t_radius, t_tail);
      const TFunctionResult r = t_function(g, b, f);
      json out = {{"t", r.value}, {"tail_bound", r.tail_bound}};
      if (!t_eps.empty()) {
        json sweeps = json::array();
        for (double eps : t_eps)
          sweeps.push_back({{"eps", eps}, {"m_eps", m_eps(g, b, f, eps)}});
        out["m_eps"] = sweeps;
      }
      manifest_seed = t_seed;
      resolved = {{"graph", t_graph}, {"sampler", smp.id}, {"seed", t_seed}, {"f", t_coeffs}};
      sink.write(out.dump());
    } else if (*alpha_cmd) {
      AlphaTable table;
      EnvironmentSampler smp;
      if (a_tree_d > 0) {
        smp = make_sampler(sampler_spec_from_flags(a_sampler, a_base), a_tree_d);
        if (a_tree_depth > 0) {
          const Graph tree = build_truncated_tree(a_tree_d, a_tree_depth);
          if (a_tree_depth < tree_alpha_min_depth(a_imax, a_imax))
            throw std::invalid_argument("alpha: --tree-depth too small for --imax");
          table = build_alpha_table(tree, smp, a_imax);
          table.girth = kGirthAcyclic;
        } else {
          table = build_tree_alpha_table(a_tree_d, smp, a_imax);
        }
      } else if (!a_graph.empty()) {
        const Graph g = build_graph(a_graph);
        smp = make_sampler(sampler_spec_from_flags(a_sampler, a_base), g.d);
        table = build_alpha_table(g, smp, a_imax);
      } else {
        throw std::invalid_argument("alpha: give --graph or --tree-d");
      }
      json values = json::array();
      json exact = json::array();
      for (int i = 0; i <= table.degree_cap; ++i) {
        json row = json::array();
        json erow = json::array();
        for (int j = 0; j <= table.degree_cap; ++j) {
          row.push_back(table.alpha(i, j));
          erow.push_back(table.tree_exact(i, j));
        }
        values.push_back(row);
        exact.push_back(erow);
      }
      json out = {{"graph", table.graph_id},
                  {"sampler", table.sampler_id},
                  {"d", table.d},
                  {"cap", table.degree_cap},
                  {"girth", table.girth == kGirthAcyclic ? json("acyclic") : json(table.girth)},
                  {"alpha", values},
                  {"tree_exact", exact}};
      resolved = {{"graph", table.graph_id}, {"sampler", table.sampler_id}, {"imax", a_imax}};
      sink.write(out.dump());
    } else if (*hform_cmd) {
      std::ifstream in(h_table);
      json doc = json::parse(in);
      AlphaTable table;
      table.graph_id = doc.at("graph");
      table.sampler_id = doc.at("sampler");
      table.d = doc.at("d");
      table.degree_cap = doc.at("cap");
      table.girth = doc.at("girth").is_string() ? kGirthAcyclic : doc.at("girth").get<int>();
      const auto& values = doc.at("alpha");
      table.values.assign(static_cast<std::size_t>(table.degree_cap + 1) * (table.degree_cap + 1),
                          0.0);
      for (int i = 0; i <= table.degree_cap; ++i)
        for (int j = 0; j <= table.degree_cap; ++j)
          table.values[static_cast<std::size_t>(i) * (table.degree_cap + 1) + j] =
              values.at(i).at(j).get<double>();
      const PowerSeries f = parse_series_flag(h_f, std::numeric_limits<double>::infinity(), 0.0);
      const PowerSeries g = parse_series_flag(h_g, std::numeric_limits<double>::infinity(), 0.0);
      json out = {{"h", h_form(table, f, g)},
                  {"graph", table.graph_id},
                  {"sampler", table.sampler_id}};
      resolved = {{"table", h_table}, {"f", h_f}, {"g", h_g}};
      sink.write(out.dump());
    } else if (*grid_cmd) {
      const TreeModel t = TreeModel::of_degree(k_d);
      if (!(t.d > 2.0)) throw std::invalid_argument("kernel-grid: needs d > 2");
      std::ostringstream csv;
      csv << "x,y,beta\n";
      for (int i = 0; i < k_nx; ++i)
        for (int j = 0; j < k_ny; ++j) {
          const double x = t.rho * (i + 0.5) / k_nx;
          const double y = t.rho * (j + 0.5) / k_ny;
          csv << format17(x) << ',' << format17(y) << ',' << format17(kernel_beta(t, x, y))
              << '\n';
        }
      resolved = {{"d", k_d}, {"nx", k_nx}, {"ny", k_ny}};
      sink.write(csv.str());
    } else if (*density_cmd) {
      const TreeModel t = TreeModel::of_degree(dd);
      std::ostringstream csv;
      csv << "x,density\n";
      for (int i = 0; i < d_points; ++i) {
        const double x = t.rho * (i + 0.5) / d_points;
        csv << format17(x) << ',' << format17(limit_density(t, x)) << '\n';
      }
      resolved = {{"d", dd}, {"points", d_points}};
      sink.write(csv.str());
    } else if (*stieltjes_cmd) {
      const TreeModel t = TreeModel::of_degree(v_d);
      const std::complex<double> lambda = parse_complex(v_lambda);
      const std::complex<double> mu = parse_complex(v_mu);
      const StieltjesResult r = stieltjes_residual(t, lambda, mu, v_tol);
      json out = {{"d", v_d},
                  {"lambda", {{"re", lambda.real()}, {"im", lambda.imag()}}},
                  {"mu", {{"re", mu.real()}, {"im", mu.imag()}}},
                  {"residual", r.residual},
                  {"closed_form", {{"re", r.closed_form.real()}, {"im", r.closed_form.imag()}}},
                  {"transform", {{"re", r.transform.real()}, {"im", r.transform.imag()}}},
                  {"converged", r.converged},
                  {"tol", v_tol},
                  {"max_residual", v_max_residual},
                  {"pass", r.converged && r.residual <= v_max_residual}};
      resolved = out;
      sink.write(out.dump());
      if (!(r.converged && r.residual <= v_max_residual)) {
        std::cerr << "verify stieltjes: residual " << r.residual << " above " << v_max_residual
                  << '\n';
        return 1;
      }
    } else if (*mc_cmd) {
      McFileConfig file = load_campaign_config(mc_config);
      if (mc_has_seed) file.experiment.master_seed = mc_seed_override;
      if (mc_threads_override >= 0) file.experiment.threads = mc_threads_override;
      if (!mc_dump.empty()) file.experiment.keep_samples = true;
      const CampaignResult r = run_campaign(file.experiment);
      manifest_seed = r.master_seed;
      resolved = file.resolved;
      resolved["seed"] = r.master_seed;
      sink.write(campaign_result_json(r).dump(2) + "\n");
      if (!mc_dump.empty()) {
        std::ostringstream csv;
        csv << "sample";
        for (const FunctionStats& s : r.stats) csv << ',' << s.name;
        csv << '\n';
        for (std::int64_t i = 0; i < r.samples; ++i) {
          csv << i;
          for (const auto& column : r.raw)
            csv << ',' << format17(column[static_cast<std::size_t>(i)]);
          csv << '\n';
        }
        sink.write_to(mc_dump, csv.str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();
  const std::string command = app.get_subcommands().empty()
                                  ? std::string("?")
                                  : app.get_subcommands().front()->get_name();
  write_manifest(sink, command, raw_args, manifest_seed, ms, resolved);
  return 0;
}
