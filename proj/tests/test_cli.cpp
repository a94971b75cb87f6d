// End-to-end checks of the installed command-line binary. The binary path
// and the bundled config directory arrive as argv[1] and argv[2].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string g_binary;
std::string g_configs;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("cost1 grid reproduces the bundled two-type example") {
  auto r = run("cost1-grid " + g_configs + "/example1.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("v1,v2,cost1") == 0);
  CHECK(r.output.find("0,0,6.33927") != std::string::npos);
  CHECK(r.output.find("2,0,4.99041") != std::string::npos);
}

TEST_CASE("optimizer reports the reference minimizer") {
  auto r = run("optimize --objective cost1 " + g_configs + "/example1.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"best\"") != std::string::npos);
  // best v = (2, 0) at 4.99041
  CHECK(r.output.find("2,") != std::string::npos);
  CHECK(r.output.find("4.99041") != std::string::npos);
}

TEST_CASE("cost2 grid honors the accounting switch") {
  auto ref = run("cost2-grid --tau 2 " + g_configs + "/example1.json");
  CHECK(ref.exit_code == 0);
  CHECK(ref.output.find("1,0,7.77258") != std::string::npos);
  auto con = run("cost2-grid --tau 2 --accounting consistent " + g_configs +
                 "/example1.json");
  CHECK(con.exit_code == 0);
  CHECK(con.output.find("1,0,7.77258") == std::string::npos);
}

TEST_CASE("series-parallel sizing commands") {
  auto r3 = run("cost3-grid " + g_configs + "/example3.json");
  CHECK(r3.exit_code == 0);
  CHECK(r3.output.find("n1,n2,n3,cost3") == 0);
  CHECK(r3.output.find("1,1,1,10.375") != std::string::npos);
  CHECK(r3.output.find("2,3,2,7.4068") != std::string::npos);
}

TEST_CASE("simulation subcommand emits a JSON estimate") {
  auto r = run("simulate --quantity mttf -N 20000 --seed 3 " + g_configs +
               "/example1.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"mean\"") != std::string::npos);
  CHECK(r.output.find("\"stderr\"") != std::string::npos);
  // identical seeds give identical bytes
  auto again = run("simulate --quantity mttf -N 20000 --seed 3 " + g_configs +
                   "/example1.json");
  CHECK(again.output == r.output);
}

TEST_CASE("reliability table and exit codes") {
  auto r = run("reliability --points 11 --t-max 5 --v 1 --v 0 " + g_configs +
               "/example1.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("t,reliability,reliability_redundant") == 0);

  auto missing = run("cost1-grid /nonexistent.json");
  CHECK(missing.exit_code != 0);
}

TEST_CASE("validation failures exit with code 2") {
  const std::string bad = g_configs + "/.bad_spec_test.json";
  FILE* f = fopen(bad.c_str(), "w");
  REQUIRE(f != nullptr);
  fputs("{\"system\": {\"source\": \"table\"}}", f);
  fclose(f);
  auto r = run("cost1-grid " + bad);
  CHECK(r.exit_code == 2);
  remove(bad.c_str());
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_tests <binary> <config-dir>\n");
    return 2;
  }
  g_binary = argv[1];
  g_configs = argv[2];
  doctest::Context context;
  return context.run();
}
