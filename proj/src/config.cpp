#include "podrbf/config.hpp"

#include <fstream>
#include <set>

#include "podrbf/bench.hpp"
#include "podrbf/errors.hpp"
#include "podrbf/expr.hpp"

namespace podrbf {
namespace {

using ojson = nlohmann::ordered_json;

// Reads keys of one JSON object and rejects the ones nobody asked for.
class Section {
 public:
  Section(const ojson& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_ + " must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions()) return;
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown key " + where(key));
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key) && !node_.at(key).is_null();
  }
  const ojson& at(const std::string& key) {
    seen_.insert(key);
    return node_.at(key);
  }
  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  template <class T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(where(key) + " has the wrong type");
    }
  }
  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    if (!at(key).is_number()) throw ConfigError(where(key) + " must be a number");
    out = at(key).get<double>();
  }
  void count(const std::string& key, std::size_t& out) {
    if (!has(key)) return;
    if (!at(key).is_number_unsigned()) throw ConfigError(where(key) + " must be a nonnegative integer");
    out = at(key).get<std::size_t>();
  }
  void vector(const std::string& key, Vector& out) {
    if (!has(key)) return;
    const auto& a = at(key);
    if (!a.is_array()) throw ConfigError(where(key) + " must be an array of numbers");
    out.resize(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_number()) throw ConfigError(where(key) + " must be an array of numbers");
      out[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    }
  }
  template <class Enum, class Parse>
  void choice(const std::string& key, Enum& out, Parse parse) {
    if (!has(key)) return;
    if (!at(key).is_string()) throw ConfigError(where(key) + " must be a string");
    try {
      out = parse(at(key).get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ConfigError(where(key) + ": " + e.what());
    }
  }

 private:
  const ojson& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

ProblemDef science_policy_from(Section& p) {
  SciencePolicyParams sp;
  p.number("g", sp.g);
  p.number("delta", sp.delta);
  p.number("y10", sp.y10);
  p.number("y20", sp.y20);
  p.number("T", sp.T);
  p.number("y1T", sp.y1T);
  p.number("y2T", sp.y2T);
  p.number("u_lo", sp.u_lo);
  p.number("u_hi", sp.u_hi);
  p.number("u0", sp.u0);
  return science_policy(sp);
}

ProblemDef population_dynamics_from(Section& p) {
  PopulationDynamicsParams pp;
  p.vector("p", pp.p);
  p.number("t0", pp.t0);
  p.number("T", pp.T);
  p.number("u1_lo", pp.u1_lo);
  p.number("u1_hi", pp.u1_hi);
  p.number("u2_lo", pp.u2_lo);
  p.number("u2_hi", pp.u2_hi);
  p.number("y1d", pp.y1d);
  p.number("y2plus", pp.y2plus);
  p.vector("y0", pp.y0);
  return population_dynamics(pp);
}

Functional functional_from(const ojson& node, const std::string& path, std::size_t n_y, std::size_t n_u,
                           const std::map<std::string, double>& constants) {
  Section s(node, path);
  Functional f;
  s.get("name", f.name);
  std::string integrand, terminal;
  s.get("integrand", integrand);
  s.get("terminal", terminal);
  require(!integrand.empty() || !terminal.empty(), path + " needs an integrand or a terminal term");
  if (!integrand.empty()) {
    auto e = Expression::compile(integrand, n_y, n_u, constants);
    f.integrand = [e](double t, const Vector& y, const Vector& u) { return e(t, y, u); };
  }
  if (!terminal.empty()) {
    // Terminal terms may use y and u at the final time but not t.
    auto e = Expression::compile(terminal, n_y, n_u, constants);
    f.terminal = [e](const Vector& yT, const Vector& uT) { return e(0.0, yT, uT); };
  }
  return f;
}

ProblemDef inline_problem(const ojson& node) {
  Section s(node, "problem.inline");
  ProblemDef def;
  def.name = "inline";
  s.get("name", def.name);
  std::map<std::string, double> constants;
  s.get("constants", constants);
  std::vector<std::string> rhs;
  s.get("rhs", rhs);
  require(!rhs.empty(), "problem.inline.rhs must list one expression per state");
  def.n_y = rhs.size();
  s.vector("y0", def.y0);
  s.number("t0", def.t0);
  s.number("T", def.T);

  require(s.has("control"), "problem.inline.control is required");
  {
    Section c(s.at("control"), "problem.inline.control");
    c.choice("kind", def.control.kind, parse_control_kind);
    c.get("nodes", def.control.nodes_per_control);
  }
  def.control.t0 = def.t0;
  def.control.T = def.T;
  def.n_u = def.control.n_controls();

  std::vector<Expression> rhs_exprs;
  for (const auto& text : rhs) rhs_exprs.push_back(Expression::compile(text, def.n_y, def.n_u, constants));
  def.rhs = [rhs_exprs](double t, const Vector& y, const Vector& u) {
    Vector dy(static_cast<Eigen::Index>(rhs_exprs.size()));
    for (std::size_t i = 0; i < rhs_exprs.size(); ++i) dy[static_cast<Eigen::Index>(i)] = rhs_exprs[i](t, y, u);
    return dy;
  };

  require(s.has("criterion"), "problem.inline.criterion is required");
  def.criterion = functional_from(s.at("criterion"), "problem.inline.criterion", def.n_y, def.n_u, constants);
  if (s.has("constraints")) {
    const auto& list = s.at("constraints");
    require(list.is_array(), "problem.inline.constraints must be an array");
    for (std::size_t j = 0; j < list.size(); ++j) {
      def.eq_constraints.push_back(functional_from(list[j], "problem.inline.constraints[" + std::to_string(j) + "]",
                                                   def.n_y, def.n_u, constants));
    }
  }
  std::string sense = "minimize";
  s.get("sense", sense);
  require(sense == "minimize" || sense == "maximize", "problem.inline.sense must be minimize or maximize");
  def.sense = sense == "maximize" ? Sense::Maximize : Sense::Minimize;
  Vector lo, hi;
  s.vector("lower", lo);
  s.vector("upper", hi);
  def.box = Box(lo, hi);
  s.vector("initial_guess", def.initial_guess);
  try {
    validate(def);
  } catch (const Error& e) {
    throw ConfigError(std::string("problem.inline: ") + e.what());
  }
  return def;
}

ProblemDef problem_from(const ojson& node) {
  Section s(node, "problem");
  const bool has_preset = s.has("preset");
  const bool has_inline = s.has("inline");
  require(has_preset != has_inline, "problem needs exactly one of preset or inline");
  if (has_inline) {
    require(!s.has("params"), "problem.params only applies to presets");
    return inline_problem(s.at("inline"));
  }
  std::string name;
  s.get("preset", name);
  static const ojson empty = ojson::object();
  Section params(s.has("params") ? s.at("params") : empty, "problem.params");
  try {
    if (name == "science-policy") return science_policy_from(params);
    if (name == "population-dynamics") return population_dynamics_from(params);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("problem.params: ") + e.what());
  }
  throw ConfigError("problem.preset: unknown preset '" + name + "'");
}

template <class T, class Parse>
std::vector<T> parse_list(Section& s, const std::string& key, Parse parse) {
  std::vector<std::string> names;
  s.get(key, names);
  std::vector<T> out;
  for (const auto& n : names) {
    try {
      out.push_back(parse(n));
    } catch (const InvalidArgument& e) {
      throw ConfigError(s.where(key) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

RunConfig parse_config(const ojson& doc) {
  RunConfig cfg;
  Section root(doc, "");
  require(root.has("problem"), "problem section is required");
  cfg.problem_source = root.at("problem");
  cfg.problem = problem_from(root.at("problem"));

  if (root.has("sampling")) {
    Section s(root.at("sampling"), "sampling");
    s.choice("strategy", cfg.strategy, parse_sampling_strategy);
    s.count("n_s", cfg.n_s);
    s.get("seed", cfg.seed);
    s.count("n_g", cfg.n_g);
  }
  if (root.has("surrogate")) {
    Section s(root.at("surrogate"), "surrogate");
    s.number("eps_pod", cfg.eps_pod);
    s.choice("kernel", cfg.kernel, parse_kernel_kind);
  }
  if (root.has("integrator")) {
    Section s(root.at("integrator"), "integrator");
    s.count("n_t", cfg.n_t);
    s.number("rtol", cfg.integrator.rtol);
    s.number("atol", cfg.integrator.atol);
    s.number("max_step_fraction", cfg.integrator.max_step_fraction);
    s.count("max_steps", cfg.integrator.max_steps);
  }
  if (root.has("optimizer")) {
    Section s(root.at("optimizer"), "optimizer");
    auto& o = cfg.optimizer;
    s.count("max_evals", o.max_evals);
    s.number("constraint_tol", o.constraint_tol);
    s.number("step_tol", o.step_tol);
    s.number("penalty0", o.penalty0);
    s.number("penalty_growth", o.penalty_growth);
    s.count("max_outer", o.max_outer);
    s.number("initial_simplex", o.initial_simplex);
    s.count("restarts", o.restarts);
    std::vector<std::string> paths;
    s.get("paths", paths);
    if (s.has("paths")) {
      cfg.optimize_original = cfg.optimize_surrogate = false;
      for (const auto& p : paths) {
        if (p == "original") cfg.optimize_original = true;
        else if (p == "surrogate") cfg.optimize_surrogate = true;
        else throw ConfigError("optimizer.paths: unknown path '" + p + "'");
      }
    }
  }
  auto& r = cfg.refine;
  if (root.has("refine")) {
    Section s(root.at("refine"), "refine");
    s.vector("width0", r.width0);
    s.number("shrink", r.shrink);
    s.number("widen", r.widen);
    s.number("tol", r.tol);
    s.count("max_iters", r.max_iters);
    s.vector("b0", r.b0);
    s.get("reference_original", r.reference_original);
  }
  if (root.has("evaluate")) {
    Section s(root.at("evaluate"), "evaluate");
    if (s.has("sweep")) {
      Section w(s.at("sweep"), "evaluate.sweep");
      cfg.sweep.strategies = parse_list<SamplingStrategy>(w, "strategies", parse_sampling_strategy);
      cfg.sweep.kernels = parse_list<KernelKind>(w, "kernels", parse_kernel_kind);
      w.get("n_s", cfg.sweep.sizes);
      require(!cfg.sweep.strategies.empty() && !cfg.sweep.kernels.empty() && !cfg.sweep.sizes.empty(),
              "evaluate.sweep needs nonempty strategies, kernels and n_s");
    }
  }
  if (root.has("output")) {
    Section s(root.at("output"), "output");
    std::string dir = cfg.out_dir.string();
    s.get("dir", dir);
    cfg.out_dir = dir;
    s.get("plots", cfg.plots);
  }

  require(cfg.n_s >= 2, "sampling.n_s must be at least 2");
  require(cfg.n_g >= 1, "sampling.n_g must be at least 1");
  require(cfg.n_t >= 2, "integrator.n_t must be at least 2");
  require(cfg.eps_pod > 0.0 && cfg.eps_pod < 1.0, "surrogate.eps_pod must lie in (0, 1)");
  require(cfg.integrator.rtol > 0.0 && cfg.integrator.atol > 0.0, "integrator tolerances must be positive");
  require(cfg.optimizer.max_evals > 0, "optimizer.max_evals must be positive");
  for (auto n : cfg.sweep.sizes) require(n >= 2, "evaluate.sweep.n_s entries must be at least 2");

  r.strategy = cfg.strategy;
  r.n_s = cfg.n_s;
  r.kernel = cfg.kernel;
  r.eps_pod = cfg.eps_pod;
  r.seed = cfg.seed;
  r.n_t = cfg.n_t;
  r.integrator = cfg.integrator;
  r.optimizer = cfg.optimizer;
  try {
    r.check();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("refine: ") + e.what());
  }
  if (r.width0.size() > 0) require(static_cast<std::size_t>(r.width0.size()) == cfg.problem.box.dim(), "refine.width0 has the wrong length");
  if (r.b0.size() > 0) require(static_cast<std::size_t>(r.b0.size()) == cfg.problem.box.dim(), "refine.b0 has the wrong length");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path.string());
  ojson doc;
  try {
    doc = ojson::parse(is, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  auto vec = [](const Vector& v) {
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
  };
  ojson paths = ojson::array();
  if (cfg.optimize_original) paths.push_back("original");
  if (cfg.optimize_surrogate) paths.push_back("surrogate");
  ojson doc;
  doc["problem"] = cfg.problem_source;
  doc["sampling"] = {{"strategy", std::string(to_string(cfg.strategy))},
                     {"n_s", cfg.n_s},
                     {"seed", cfg.seed},
                     {"n_g", cfg.n_g}};
  doc["surrogate"] = {{"eps_pod", cfg.eps_pod}, {"kernel", std::string(to_string(cfg.kernel))}};
  doc["integrator"] = {{"n_t", cfg.n_t},
                       {"rtol", cfg.integrator.rtol},
                       {"atol", cfg.integrator.atol},
                       {"max_step_fraction", cfg.integrator.max_step_fraction},
                       {"max_steps", cfg.integrator.max_steps}};
  const auto& o = cfg.optimizer;
  doc["optimizer"] = {{"max_evals", o.max_evals},       {"constraint_tol", o.constraint_tol},
                      {"step_tol", o.step_tol},         {"penalty0", o.penalty0},
                      {"penalty_growth", o.penalty_growth}, {"max_outer", o.max_outer},
                      {"initial_simplex", o.initial_simplex}, {"restarts", o.restarts},
                      {"paths", paths}};
  const auto& r = cfg.refine;
  doc["refine"] = {{"width0", r.width0.size() ? vec(r.width0) : ojson(nullptr)},
                   {"shrink", r.shrink},
                   {"widen", r.widen},
                   {"tol", r.tol},
                   {"max_iters", r.max_iters},
                   {"b0", r.b0.size() ? vec(r.b0) : ojson(nullptr)},
                   {"reference_original", r.reference_original}};
  if (cfg.sweep.enabled()) {
    ojson st = ojson::array(), kn = ojson::array();
    for (auto s : cfg.sweep.strategies) st.push_back(std::string(to_string(s)));
    for (auto k : cfg.sweep.kernels) kn.push_back(std::string(to_string(k)));
    doc["evaluate"] = {{"sweep", {{"strategies", st}, {"kernels", kn}, {"n_s", cfg.sweep.sizes}}}};
  }
  doc["output"] = {{"dir", cfg.out_dir.string()}, {"plots", cfg.plots}};
  return doc;
}

}  // namespace podrbf
