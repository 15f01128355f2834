#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct run_result {
  int code = -1;
  std::string out;
};

run_result run(const std::string &args)
{
  std::string cmd = std::string(SCATTER_BIN) + " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  run_result r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0)
    r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json result_of(const run_result &r)
{
  return json::parse(r.out).at("result");
}

std::string tmp_path(const char *name)
{
  return std::string("/tmp/scatter_cli_") + name;
}

} // namespace

TEST_CASE("verdict exit codes")
{
  auto yes = run("check --field 3:1,1 --coeffs 0,1 -t 3 -m 1 --no-timestamp");
  CHECK(yes.code == 0);
  CHECK(result_of(yes).at("scattered") == true);

  auto no = run("check --field 3:1,2 --coeffs 2,0,1 -t 1 -m 2 --no-timestamp");
  CHECK(no.code == 2);
  CHECK(result_of(no).at("scattered") == false);
}

TEST_CASE("error and budget exits")
{
  auto bad = tmp_path("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(run("check --poly " + bad + " -t 1 -m 1").code == 1);

  CHECK(run("check --field 3:1,2 --coeffs 2,0,1 -t 1 -m 2 "
            "--max-specializations 10")
            .code == 3);

  CHECK(run("ramify --field 3:1,1 --coeffs 0,0,1 -t 1").code == 1);
}

TEST_CASE("negative verdicts bubble through subcommands")
{
  CHECK(run("groups zsigmondy -b 2 -n 6").code == 2);
  CHECK(run("groups zsigmondy -b 3 -n 6").code == 0);
  CHECK(run("kummer -q 3 -n 2 -m 1 -t 1").code == 2);
  CHECK(run("kummer -q 3 -n 1 -m 1 -t 3").code == 0);
  CHECK(run("mrd --field 3:1,4 --coeffs 0,0,1").code == 2);
  CHECK(run("mrd --field 3:1,3 --coeffs 0,1").code == 0);
}

TEST_CASE("verify round-trips and catches tampering")
{
  auto rep = tmp_path("orders.json");
  CHECK(run("groups orders -d 3 -q 3 --no-timestamp -o " + rep).code == 0);
  auto ok = run("verify --report " + rep + " --no-timestamp");
  CHECK(ok.code == 0);
  CHECK(result_of(ok).at("valid") == true);

  json doc;
  std::ifstream(rep) >> doc;
  doc["result"]["gl"] = "11233";
  std::ofstream(rep) << doc.dump();
  auto bad = run("verify --report " + rep + " --no-timestamp");
  CHECK(bad.code == 2);
  CHECK(result_of(bad).at("valid") == false);
  CHECK(!result_of(bad).at("failures").empty());
}

TEST_CASE("scan report shape")
{
  auto r = run("scan --field 3:1,1 --coeffs 1 -t 3 --m-max 6 --no-timestamp");
  CHECK(r.code == 0);
  auto entries = result_of(r).at("entries");
  REQUIRE(entries.size() == 6);
  std::vector<bool> expect{true, true, false, true, true, false};
  for (size_t i = 0; i < 6; ++i) {
    CHECK(entries[i].at("m") == i + 1);
    CHECK(entries[i].at("scattered") == expect[i]);
  }
}
