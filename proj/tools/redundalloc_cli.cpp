// Command-line front end. Parses a JSON run specification and executes one
// of the reliability / cost / optimization / simulation commands through the
// shared-library C interface.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "redundalloc/redundalloc.h"

namespace {

int exit_code_of(rda_status status) {
  switch (status) {
    case RDA_OK: return 0;
    case RDA_ERR_NUMERIC: return 3;
    default: return 2;
  }
}

struct CommonArgs {
  std::string spec_path;
  std::string output_path;
  std::vector<int> v;
  double tau = -1.0;
  double t = -1.0;
  double t_max = -1.0;
  int points = -1;
  long samples = -1;
  long seed = -1;
  int threads = 0;
  int precision = -1;
  std::string accounting;
  std::string objective;
  std::string quantity;
  std::string format;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("spec", args.spec_path, "run specification (JSON file)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", args.output_path,
                  "write the result here instead of stdout");
  cmd->add_option("--threads", args.threads,
                  "worker cap (default: REDUNDALLOC_THREADS or all cores)");
  cmd->add_option("--precision", args.precision,
                  "significant digits in tables (default 6)");
}

std::string options_json(const CLI::App* cmd, const CommonArgs& args) {
  std::string js = "{";
  auto append = [&js](const std::string& piece) {
    if (js.size() > 1) js += ",";
    js += piece;
  };
  auto num = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  if (!args.v.empty()) {
    std::string lst = "[";
    for (size_t i = 0; i < args.v.size(); ++i)
      lst += (i ? "," : "") + std::to_string(args.v[i]);
    append("\"v\":" + lst + "]");
  }
  auto given = [cmd](const char* name) {
    const auto* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--tau")) append("\"tau\":" + num(args.tau));
  if (given("--time")) append("\"t\":" + num(args.t));
  if (given("--t-max")) append("\"t_max\":" + num(args.t_max));
  if (args.points > 0) append("\"points\":" + std::to_string(args.points));
  if (args.samples > 0) append("\"N\":" + std::to_string(args.samples));
  if (args.seed >= 0) append("\"seed\":" + std::to_string(args.seed));
  if (args.threads > 0) append("\"threads\":" + std::to_string(args.threads));
  if (args.precision > 0)
    append("\"precision\":" + std::to_string(args.precision));
  if (!args.accounting.empty())
    append("\"accounting\":\"" + args.accounting + "\"");
  if (!args.objective.empty())
    append("\"objective\":\"" + args.objective + "\"");
  if (!args.quantity.empty()) append("\"quantity\":\"" + args.quantity + "\"");
  if (!args.format.empty()) append("\"format\":\"" + args.format + "\"");
  js += "}";
  return js;
}

int run(const std::string& command, const CLI::App* cmd,
        const CommonArgs& args) {
  rda_session* session = nullptr;
  rda_status status = rda_session_create_file(args.spec_path.c_str(), &session);
  if (status != RDA_OK) {
    std::fprintf(stderr, "error: %s\n", rda_last_error());
    return exit_code_of(status);
  }
  char* text = nullptr;
  status = rda_run(session, command.c_str(),
                   options_json(cmd, args).c_str(), &text);
  if (status != RDA_OK) {
    std::fprintf(stderr, "error: %s\n", rda_last_error());
    rda_session_free(session);
    return exit_code_of(status);
  }
  if (args.output_path.empty()) {
    std::fputs(text, stdout);
    if (text[0] != '\0' && text[std::strlen(text) - 1] != '\n')
      std::fputc('\n', stdout);
  } else {
    FILE* f = std::fopen(args.output_path.c_str(), "wb");
    if (!f) {
      std::fprintf(stderr, "error: cannot write '%s'\n",
                   args.output_path.c_str());
      rda_string_free(text);
      rda_session_free(session);
      return 2;
    }
    std::fputs(text, f);
    std::fclose(f);
  }
  rda_string_free(text);
  rda_session_free(session);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "redundalloc: reliability and mean-cost-rate analysis of coherent "
      "systems with copula-dependent components, with redundancy and "
      "subsystem-size optimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rda_version());

  CommonArgs args;

  auto* rel = app.add_subcommand(
      "reliability", "survival curves of the system, with and without spares");
  add_common(rel, args);
  rel->add_option("--v", args.v, "spares per component of each type");
  rel->add_option("--t-max", args.t_max, "grid end (default 5x max mean)");
  rel->add_option("--points", args.points, "grid size (default 101)");

  auto* mttf = app.add_subcommand("mttf", "mean time to failure");
  add_common(mttf, args);
  mttf->add_option("--v", args.v, "spares per component of each type");

  auto* sig = app.add_subcommand("signature",
                                 "emit the system's survival signature");
  add_common(sig, args);
  sig->add_option("--format", args.format, "json (default) or csv");

  const char* acc_help =
      "conditional-expectation accounting: reference (default; reproduces "
      "the published tables) or consistent (simulation-faithful)";

  auto* c1 = app.add_subcommand("cost1-grid",
                                "failure-replacement cost rate over the "
                                "feasible redundancy grid");
  add_common(c1, args);

  auto* c2 = app.add_subcommand("cost2-grid",
                                "age-replacement cost rate over the grid");
  add_common(c2, args);
  c2->add_option("--tau", args.tau, "replacement age (default: spec costs.tau)");
  c2->add_option("--accounting", args.accounting, acc_help);

  auto* c3 = app.add_subcommand("cost3-grid",
                                "series-parallel sizing cost over 1 <= n_i "
                                "<= M_i");
  add_common(c3, args);

  auto* c4 = app.add_subcommand("cost4-grid",
                                "series-parallel age-replacement cost over "
                                "the size grid");
  add_common(c4, args);
  c4->add_option("--tau", args.tau, "replacement age (default: spec costs.tau)");
  c4->add_option("--accounting", args.accounting, acc_help);

  auto* optx = app.add_subcommand("optimize",
                                  "exhaustive minimization of an objective");
  add_common(optx, args);
  optx->add_option("--objective", args.objective,
                   "cost1 | cost2 | cost3 | cost4 (default cost1)");
  optx->add_option("--tau", args.tau, "replacement age for cost2/cost4");
  optx->add_option("--accounting", args.accounting, acc_help);

  auto* topt = app.add_subcommand(
      "tau-opt", "optimal replacement age per feasible redundancy vector");
  add_common(topt, args);
  topt->add_option("--accounting", args.accounting, acc_help);

  auto* sim = app.add_subcommand("simulate",
                                 "Monte Carlo estimate of a model quantity");
  add_common(sim, args);
  sim->add_option("--quantity", args.quantity,
                  "cost1 | cost2 | mttf | reliability | expected_failed");
  sim->add_option("--v", args.v, "spares per component of each type");
  sim->add_option("--tau", args.tau, "replacement age for cost2");
  sim->add_option("--time", args.t, "evaluation time for reliability");
  sim->add_option("-N,--samples", args.samples, "sample count (default 1e6)");
  sim->add_option("--seed", args.seed, "rng seed (default 1)");

  CLI11_PARSE(app, argc, argv);

  for (auto* cmd : app.get_subcommands()) {
    const std::string name = cmd->get_name();
    std::string command = name;
    return run(command, cmd, args);
  }
  return 2;
}
