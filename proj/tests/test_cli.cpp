#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

std::string bin() {
  const char* b = std::getenv("KOSZULKIT_BIN");
  REQUIRE(b);
  return b;
}

std::string corpus(const std::string& name) {
  const char* c = std::getenv("KOSZULKIT_CORPUS");
  REQUIRE(c);
  return std::string(c) + "/" + name;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cmd(const std::string& cmd) {
  RunResult r{-1, ""};
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WEXITSTATUS(st);
  return r;
}

json run_json(const std::string& file, const std::string& extra = "") {
  RunResult r = run_cmd(bin() + " run --input " + corpus(file) + " " + extra);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::string write_temp(const std::string& body) {
  std::string path = "/tmp/koszulkit_cli_case.kk";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("local commutative example: full report verdicts") {
  json r = run_json("sjodin.kk");
  CHECK(r.at("report_schema") == 1);
  CHECK(r.at("field") == "Q");
  CHECK(!r.at("input_hash").get<std::string>().empty());
  CHECK(r.at("algebra").at("total_dim") == 5);
  CHECK(r.at("algebra").at("complete") == true);
  CHECK(r.at("limits").at("hom_max") == 5);

  const json& tasks = r.at("tasks");
  CHECK(tasks.at("quasi_koszul").at("pass") == true);
  CHECK(tasks.at("koszul").at("pass") == false);
  const json& wit = tasks.at("koszul").at("per_simple").at("v").at("witness");
  CHECK(wit.at("n") == 1);
  CHECK(wit.at("k") == 2);
  CHECK(wit.at("t") == 0);
  CHECK(!wit.at("vector").empty());

  CHECK(tasks.at("ext").at("dims") == json::array({1, 2, 3, 4, 5, 6}));
  CHECK(tasks.at("ext").at("certified_degree") == 5);
  CHECK(tasks.at("dual").at("generated_in_degree_one").at("pass") == true);
  CHECK(tasks.at("gr").at("dims") == json::array({1, 2, 1, 1, 0, 0}));
  CHECK(tasks.at("gr").at("complete") == true);
  CHECK(tasks.at("resolve").at("v").contains("pdim_open_beyond"));
}

TEST_CASE("graded dual numbers: double dual and opposite") {
  json r = run_json("kx2_graded.kk");
  const json& tasks = r.at("tasks");
  CHECK(tasks.at("koszul").at("pass") == true);
  CHECK(tasks.at("double_dual").at("pass") == true);
  CHECK(tasks.at("double_dual").at("window") == 2);
  CHECK(tasks.at("double_dual").at("dims_double_dual") == json::array({1, 1, 0}));
  CHECK(tasks.at("double_dual").at("dims_graded") == json::array({1, 1, 0}));
  CHECK(tasks.at("opposite").at("koszul") == true);
}

TEST_CASE("single arrow: regular fails, dual is not self-injective, duality still holds") {
  json r = run_json("a2.kk");
  const json& tasks = r.at("tasks");
  CHECK(tasks.at("koszul").at("pass") == true);
  CHECK(tasks.at("as_regular").at("status") == "fail");
  CHECK(tasks.at("self_injective_dual").at("pass") == false);
  CHECK(tasks.at("double_dual").at("pass") == true);
  CHECK(tasks.at("resolve").at("a").at("pdim") == 1);
  CHECK(tasks.at("resolve").at("b").at("pdim") == 0);
}

TEST_CASE("cyclic quiver: regular with the rotation twist, self-injective dual") {
  json r = run_json("cyclic3.kk");
  const json& tasks = r.at("tasks");
  CHECK(tasks.at("as_regular").at("status") == "pass");
  CHECK(tasks.at("as_regular").at("d") == 1);
  CHECK(tasks.at("as_regular").at("sigma").at("v0").at("vertex") == "v1");
  CHECK(tasks.at("as_regular").at("sigma").at("v0").at("twist") == -1);
  CHECK(tasks.at("self_injective_dual").at("pass") == true);
  CHECK(tasks.at("self_injective_dual").at("top_degree") == 1);
  CHECK(r.at("algebra").at("complete") == false);
}

TEST_CASE("trivially graded k[x]/(x^3) fails immediately with a recorded witness") {
  json r = run_json("kx3_ungraded.kk");
  const json& q = r.at("tasks").at("quasi_koszul");
  CHECK(q.at("pass") == false);
  const json& wit = q.at("per_simple").at("v").at("witness");
  CHECK(wit.at("n") == 1);
  CHECK(wit.at("k") == 1);
  json rg = run_json("kx3_graded.kk");
  CHECK(rg.at("tasks").at("koszul").at("pass") == false);
}

TEST_CASE("five-vertex example: syzygy certificate and double duality in one run") {
  json r = run_json("cps_b.kk");
  const json& tasks = r.at("tasks");
  CHECK(r.at("algebra").at("total_dim") == 21);
  CHECK(tasks.at("quasi_koszul").at("pass") == true);
  CHECK(tasks.at("koszul").at("pass") == true);
  CHECK(tasks.at("double_dual").at("pass") == true);
  CHECK(tasks.at("double_dual").at("dims_double_dual") == json::array({5, 7, 5, 3, 1}));
  // the dual itself has global dimension 3; only the double dual matches Gr
  CHECK(tasks.at("ext").at("dims") == json::array({5, 7, 5, 2, 0}));
}

TEST_CASE("remaining corpus verdicts") {
  json bb = run_json("bendback.kk");
  CHECK(bb.at("tasks").at("koszul").at("pass") == true);
  json ss = run_json("semisimple.kk");
  CHECK(ss.at("tasks").at("as_regular").at("status") == "pass");
  CHECK(ss.at("tasks").at("as_regular").at("d") == 0);
}

TEST_CASE("reports are byte-identical across runs and thread settings") {
  RunResult a = run_cmd(bin() + " run --input " + corpus("sjodin.kk"));
  RunResult b = run_cmd(bin() + " run --input " + corpus("sjodin.kk"));
  RunResult c = run_cmd(bin() + " run --input " + corpus("sjodin.kk") + " --threads 4");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("the input hash pins the exact bytes of the file") {
  json r1 = run_json("sjodin.kk");
  json r2 = run_json("kx2_graded.kk");
  CHECK(r1.at("input_hash") != r2.at("input_hash"));
}

TEST_CASE("text format and file output") {
  RunResult t = run_cmd(bin() + " run --input " + corpus("a2.kk") + " --format text");
  CHECK(t.code == 0);
  CHECK(t.out.find("report_schema: 1") != std::string::npos);
  CHECK(t.out.find("as_regular") != std::string::npos);

  std::string outfile = "/tmp/koszulkit_cli_report.json";
  std::remove(outfile.c_str());
  RunResult w = run_cmd(bin() + " run --input " + corpus("a2.kk") + " --out " + outfile);
  CHECK(w.code == 0);
  CHECK(w.out.empty());
  std::ifstream in(outfile);
  REQUIRE(in.good());
  json r = json::parse(in);
  CHECK(r.at("report_schema") == 1);
}

TEST_CASE("field override changes the reported scalars") {
  json r = run_json("sjodin.kk", "--field Fp:5");
  CHECK(r.at("field") == "F5");
  CHECK(r.at("algebra").at("total_dim") == 5);
}

TEST_CASE("validate subcommand") {
  RunResult ok = run_cmd(bin() + " validate --input " + corpus("cps_b.kk"));
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("ok:", 0) == 0);
  RunResult missing = run_cmd(bin() + " validate --input /nonexistent.kk");
  CHECK(missing.code == 2);
}

TEST_CASE("exit codes for bad inputs") {
  CHECK(run_cmd(bin() + " run --input /nonexistent.kk").code == 2);

  std::string no_tasks = write_temp(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v"]
arrows = []
[limits]
weight_max = 1
)");
  CHECK(run_cmd(bin() + " run --input " + no_tasks).code == 2);

  std::string bad_task = write_temp(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v"]
arrows = []
[limits]
weight_max = 1
[tasks]
banana
)");
  CHECK(run_cmd(bin() + " run --input " + bad_task).code == 2);

  std::string bad_field = write_temp("");
  CHECK(run_cmd(bin() + " run --input " + bad_field + " --field Fp:6").code == 2);

  CHECK(run_cmd(bin() + " run").code == 2);       // missing required option
  CHECK(run_cmd(bin() + " frobnicate").code == 2);  // unknown subcommand
}

TEST_CASE("inhomogeneous relations are rejected at run time") {
  std::string mixed = write_temp(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v"]
arrows = [
  {name = "x", from = "v", to = "v", weight = 1},
]
[relations]
x*x + x
[limits]
weight_max = 2
[tasks]
resolve
)");
  CHECK(run_cmd(bin() + " run --input " + mixed).code == 2);
  CHECK(run_cmd(bin() + " validate --input " + mixed).code == 2);
}
