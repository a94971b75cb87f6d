#include "redundalloc/runspec.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "redundalloc/errors.hpp"
#include "redundalloc/optimizer.hpp"
#include "redundalloc/oracle.hpp"
#include "redundalloc/reliability.hpp"

namespace rda {

using nlohmann::json;

namespace {

[[noreturn]] void bad_spec(const std::string& path, const std::string& what) {
  fail(errc::parse_error, "at " + path + ": " + what);
}

double number_or_rational(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) bad_spec(path, "rational with zero denominator");
      return num / den;
    } catch (const std::exception&) {
      bad_spec(path, "expected a number or \"a/b\" string");
    }
  }
  bad_spec(path, "expected a number or \"a/b\" string");
}

std::vector<int> int_vector(const json& j, const std::string& path) {
  if (!j.is_array()) bad_spec(path, "expected an array");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad_spec(path, "expected integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<double> double_vector(const json& j, const std::string& path) {
  if (!j.is_array()) bad_spec(path, "expected an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number_or_rational(x, path));
  return out;
}

SystemStructure parse_system(const json& j) {
  if (!j.is_object()) bad_spec("system", "expected an object");
  const std::string source = j.value("source", "table");
  if (source == "table") {
    auto n = int_vector(j.at("n"), "system.n");
    std::vector<std::pair<std::vector<int>, double>> entries;
    if (!j.contains("phi") || !j.at("phi").is_array())
      bad_spec("system.phi", "expected an array of {l, value} entries");
    for (const auto& e : j.at("phi"))
      entries.emplace_back(int_vector(e.at("l"), "system.phi[].l"),
                           number_or_rational(e.at("value"),
                                              "system.phi[].value"));
    return SystemStructure::from_table(n, entries);
  }
  if (source == "k_out_of_n") {
    auto n = int_vector(j.at("n"), "system.n");
    return SystemStructure::k_out_of_n(j.at("k").get<int>(), n);
  }
  if (source == "series_parallel") {
    auto n = int_vector(j.at("n"), "system.n");
    return SystemStructure::series_parallel(n);
  }
  if (source == "paths") {
    auto n = int_vector(j.at("n"), "system.n");
    auto types1 = int_vector(j.at("type_of_component"),
                             "system.type_of_component");
    std::vector<int> types;
    for (int t : types1) {
      if (t < 1 || t > (int)n.size())
        bad_spec("system.type_of_component", "type ids are 1-based");
      types.push_back(t - 1);
    }
    std::vector<std::vector<int>> paths;
    for (const auto& p : j.at("minimal_path_sets")) {
      auto comps = int_vector(p, "system.minimal_path_sets[]");
      for (int& c : comps) {
        if (c < 1 || c > (int)types.size())
          bad_spec("system.minimal_path_sets", "component ids are 1-based");
        --c;
      }
      paths.push_back(std::move(comps));
    }
    const int cap = j.value("enumeration_cap", 24);
    return SystemStructure::from_paths(n, types, paths, cap);
  }
  bad_spec("system.source", "unknown source '" + source + "'");
}

SurvivalCopula parse_copula(const json& j) {
  if (!j.is_object()) bad_spec("copula", "expected an object");
  const std::string family = j.value("family", "independence");
  if (family == "independence") return SurvivalCopula::independence();
  if (family == "gumbel")
    return SurvivalCopula::gumbel(j.at("alpha").get<double>());
  if (family == "clayton")
    return SurvivalCopula::clayton(j.at("alpha").get<double>());
  bad_spec("copula.family", "unknown family '" + family + "'");
}

MarginalModel parse_marginal(const json& j, int index) {
  const std::string path = "marginals[" + std::to_string(index) + "]";
  if (!j.is_object()) bad_spec(path, "expected an object");
  const std::string family = j.value("family", "");
  const json params = j.value("params", json::object());
  try {
    if (family == "exponential")
      return MarginalModel::exponential(params.at("rate").get<double>());
    if (family == "weibull")
      return MarginalModel::weibull(params.at("shape").get<double>(),
                                    params.at("rate").get<double>());
    if (family == "pareto_linear")
      return MarginalModel::pareto_linear(params.at("rate").get<double>(),
                                          params.at("exponent").get<double>());
  } catch (const json::exception& e) {
    bad_spec(path + ".params", e.what());
  }
  bad_spec(path + ".family", "unknown family '" + family + "'");
}

CostModel parse_costs(const json& j, int types) {
  CostModel out;
  if (!j.is_object()) bad_spec("costs", "expected an object");
  out.c = double_vector(j.at("c"), "costs.c");
  out.c_star = double_vector(j.at("c_star"), "costs.c_star");
  out.c_fixed = j.value("c_fixed", 0.0);
  out.spares = j.contains("M") ? int_vector(j.at("M"), "costs.M")
                               : std::vector<int>(types, 0);
  if (j.contains("tau")) out.tau = j.at("tau").get<double>();
  try {
    out.validate(types);
  } catch (const Error& e) {
    fail(e.code(), std::string("costs: ") + e.what());
  }
  return out;
}

// ---- command plumbing ------------------------------------------------

struct Options {
  json j;
  int precision = 6;

  explicit Options(const std::string& text) {
    if (text.empty()) {
      j = json::object();
    } else {
      j = json::parse(text, nullptr, false);
      if (j.is_discarded())
        fail(errc::parse_error, "options are not valid JSON");
      if (!j.is_object()) fail(errc::parse_error, "options must be an object");
    }
    precision = j.value("precision", 6);
  }

  std::string fmt(double x) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
  }

  std::vector<int> v_or_zero(int types) const {
    if (!j.contains("v")) return std::vector<int>(types, 0);
    return int_vector(j.at("v"), "options.v");
  }

  CostAccounting accounting() const {
    const std::string mode = j.value("accounting", "reference");
    if (mode == "reference") return CostAccounting::reference;
    if (mode == "consistent") return CostAccounting::consistent;
    fail(errc::parse_error,
         "options.accounting must be 'reference' or 'consistent'");
  }

  double tau_required(const RunSpec& spec) const {
    if (j.contains("tau")) return j.at("tau").get<double>();
    if (spec.costs.tau) return *spec.costs.tau;
    fail(errc::bad_parameter,
         "command needs tau (options.tau or costs.tau in the spec)");
  }

  int threads() const { return j.value("threads", 0); }
};

json allocation_to_json(const AllocationResult& r, const Options& opt) {
  json grid = json::array();
  for (const auto& [vec, value] : r.grid)
    grid.push_back({{"v", vec}, {"value", value}});
  json out{{"objective", objective_name(r.objective)},
           {"best", r.best},
           {"value", r.best_value},
           {"grid", grid}};
  if (r.tau_used) out["tau"] = *r.tau_used;
  (void)opt;
  return out;
}

std::string grid_csv(const AllocationResult& r, const char* var_prefix,
                     const char* value_header, const Options& opt) {
  std::ostringstream os;
  const int L = (int)r.best.size();
  for (int i = 0; i < L; ++i) os << var_prefix << i + 1 << ",";
  os << value_header << "\r\n";
  for (const auto& [vec, value] : r.grid) {
    for (int x : vec) os << x << ",";
    os << opt.fmt(value) << "\r\n";
  }
  return os.str();
}

}  // namespace

RunSpec parse_spec(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "spec is not valid JSON");
  if (!j.is_object()) fail(errc::parse_error, "spec must be a JSON object");
  for (const char* key : {"system", "copula", "marginals", "costs"})
    if (!j.contains(key))
      fail(errc::parse_error, std::string("spec is missing '") + key + "'");
  SystemStructure st = parse_system(j.at("system"));
  SurvivalCopula copula = parse_copula(j.at("copula"));
  if (!j.at("marginals").is_array())
    bad_spec("marginals", "expected an array");
  std::vector<MarginalModel> marginals;
  int idx = 0;
  for (const auto& m : j.at("marginals"))
    marginals.push_back(parse_marginal(m, idx++));
  if ((int)marginals.size() != st.types())
    fail(errc::mismatched_sizes,
         "marginals: expected " + std::to_string(st.types()) +
             " entries, got " + std::to_string(marginals.size()));
  CostModel costs = parse_costs(j.at("costs"), st.types());
  return RunSpec{SystemModel(std::move(st), std::move(copula),
                             std::move(marginals)),
                 std::move(costs)};
}

RunSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string signature_to_json(const SystemStructure& st) {
  json phi = json::array();
  for (std::size_t idx = 0; idx < st.lattice_size(); ++idx)
    phi.push_back({{"l", st.unflatten(idx)}, {"value", st.phi_at(idx)}});
  json out{{"L", st.types()}, {"n", st.counts()}, {"phi", phi}};
  return out.dump(2);
}

std::string signature_to_csv(const SystemStructure& st) {
  std::ostringstream os;
  for (int i = 0; i < st.types(); ++i) os << "l_" << i + 1 << ",";
  os << "value\r\n";
  for (std::size_t idx = 0; idx < st.lattice_size(); ++idx) {
    for (int l : st.unflatten(idx)) os << l << ",";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", st.phi_at(idx));
    os << buf << "\r\n";
  }
  return os.str();
}

std::string run_command(const RunSpec& spec, const std::string& command,
                        const std::string& options_json) {
  Options opt(options_json);
  const SystemModel& model = spec.model;
  const int L = model.types();

  if (command == "reliability") {
    const auto v = opt.v_or_zero(L);
    validate_redundancy(model, v);
    double t_max = opt.j.value("t_max", 0.0);
    if (t_max <= 0.0) t_max = default_tau_bracket(model).second;
    const int points = opt.j.value("points", 101);
    ReliabilityKernel kernel(model);
    std::ostringstream os;
    os << "t,reliability,reliability_redundant\r\n";
    for (int k = 0; k < points; ++k) {
      const double t = t_max * k / (points - 1);
      os << opt.fmt(t) << "," << opt.fmt(kernel.survival(t)) << ","
         << opt.fmt(kernel.survival_redundant(v, t)) << "\r\n";
    }
    return os.str();
  }

  if (command == "mttf") {
    const auto v = opt.v_or_zero(L);
    json out{{"v", v}, {"mttf", mttf(model, v)}};
    return out.dump(2);
  }

  if (command == "signature") {
    if (opt.j.value("format", "json") == "csv")
      return signature_to_csv(model.structure);
    return signature_to_json(model.structure);
  }

  if (command == "cost1-grid" || command == "cost2-grid") {
    const bool is2 = command == "cost2-grid";
    AllocationResult r = optimize_allocation(
        model, spec.costs, is2 ? Objective::cost2 : Objective::cost1,
        is2 ? std::optional<double>(opt.tau_required(spec)) : std::nullopt,
        opt.accounting(), opt.threads());
    return grid_csv(r, "v", is2 ? "cost2" : "cost1", opt);
  }

  if (command == "cost3-grid" || command == "cost4-grid") {
    const bool is4 = command == "cost4-grid";
    AllocationResult r = optimize_subsystem_sizes(
        model, spec.costs, is4 ? Objective::cost4 : Objective::cost3,
        is4 ? std::optional<double>(opt.tau_required(spec)) : std::nullopt,
        opt.accounting(), opt.threads());
    return grid_csv(r, "n", is4 ? "cost4" : "cost3", opt);
  }

  if (command == "optimize") {
    const auto name = opt.j.value("objective", "cost1");
    const auto objective = objective_from_name(name);
    require(objective.has_value(), errc::bad_parameter,
            "unknown objective '" + name + "'");
    std::optional<double> tau;
    if (*objective == Objective::cost2 || *objective == Objective::cost4)
      tau = opt.tau_required(spec);
    AllocationResult r =
        (*objective == Objective::cost1 || *objective == Objective::cost2)
            ? optimize_allocation(model, spec.costs, *objective, tau,
                                  opt.accounting(), opt.threads())
            : optimize_subsystem_sizes(model, spec.costs, *objective, tau,
                                       opt.accounting(), opt.threads());
    return allocation_to_json(r, opt).dump(2);
  }

  if (command == "tau-opt") {
    auto bracket = default_tau_bracket(model);
    const double lo = opt.j.value("tau_lo", bracket.first);
    const double hi = opt.j.value("tau_hi", bracket.second);
    auto grid = enumerate_feasible(model.structure.counts(),
                                   spec.costs.spares);
    std::ostringstream os;
    for (int i = 0; i < L; ++i) os << "v" << i + 1 << ",";
    os << "tau_star,cost2\r\n";
    for (const auto& v : grid) {
      TauResult r = optimize_tau(model, spec.costs, v, Objective::cost2, lo,
                                 hi, opt.accounting());
      for (int x : v) os << x << ",";
      os << opt.fmt(r.tau_star) << "," << opt.fmt(r.value) << "\r\n";
    }
    return os.str();
  }

  if (command == "simulate") {
    SimulationConfig config;
    config.samples = opt.j.value("N", 1000000L);
    config.seed = opt.j.value("seed", 1UL);
    config.threads = opt.threads();
    const auto v = opt.v_or_zero(L);
    const std::string quantity = opt.j.value("quantity", "cost1");
    SimulationEstimate est;
    if (quantity == "cost1")
      est = simulate_cost1(model, spec.costs, v, config);
    else if (quantity == "cost2")
      est = simulate_cost2(model, spec.costs, v, opt.tau_required(spec),
                           config);
    else if (quantity == "mttf")
      est = simulate_mttf(model, v, config);
    else if (quantity == "reliability")
      est = simulate_reliability(model, v, opt.j.value("t", 1.0), config);
    else if (quantity == "expected_failed")
      est = simulate_expected_failed(model, opt.j.value("type", 1) - 1,
                                     config);
    else
      fail(errc::bad_parameter, "unknown quantity '" + quantity + "'");
    json out{{"quantity", quantity},
             {"mean", est.mean},
             {"stderr", est.std_error},
             {"N", est.samples},
             {"seed", config.seed}};
    return out.dump(2);
  }

  fail(errc::bad_parameter, "unknown command '" + command + "'");
}

}  // namespace rda
