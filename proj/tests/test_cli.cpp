#include <doctest.h>
#include <json.hpp>

#include "cli_runner.hpp"

using json = nlohmann::json;

TEST_CASE("passing suites exit 0") {
  CHECK(run_cli("verify cubic --type A2 --den 6").code == 0);
  CHECK(run_cli("verify canonical --type B2 --seed 7").code == 0);
  CHECK(run_cli("verify braid --type G2").code == 0);
}

TEST_CASE("findings exit 0") {
  auto r = run_cli("verify minpoly --type A1 --m paper");
  CHECK(r.code == 0);
  CHECK(r.out.find("[finding] divides_configured_family") != std::string::npos);
  CHECK(r.out.find("(x - 1)") == std::string::npos);
  auto j = json::parse(run_cli("verify minpoly --type A1 --m paper --json").out);
  bool found = false;
  for (const auto& e : j["results"])
    if (e["check"] == "divides_configured_family") found = e["status"] == "finding";
  CHECK(found);
}

TEST_CASE("assertion failures exit 1 with a witness") {
  auto r = run_cli("verify tilting --type A1");
  CHECK(r.code == 1);
  CHECK(r.out.find("witness:") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("verify braid --type X9").code == 2);
  CHECK(run_cli("verify braid --type A2 --den 0").code == 2);
  CHECK(run_cli("verify braid --type A2 --m often").code == 2);
  CHECK(run_cli("verify nothing --type A2").code == 2);
  CHECK(run_cli("specialize 1 --type A1").code == 2);
  CHECK(run_cli("").code == 2);
}

TEST_CASE("dump cells as json") {
  auto r = run_cli("dump cells --type A2 --json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["command"] == "dump cells");
  CHECK(j["config"]["type"] == "A2");
  const auto& cells = j["data"]["cells"];
  REQUIRE(cells.size() == 3);
  CHECK(cells[0] == json::array({"e"}));
  CHECK(cells[1].size() == 4);
  CHECK(cells[2].size() == 1);
}

TEST_CASE("dump tables") {
  auto q = run_cli("dump qpoly --type A2 --den 6");
  CHECK(q.code == 0);
  CHECK(q.out.find("  0,0 | A2 | -v^2: 1 - 2*v^2 + 2*v^4 - v^6") != std::string::npos);
  auto f = json::parse(run_cli("dump fulltwist_scalars --type A1 --json").out);
  REQUIRE(f["data"].size() == 2);
  CHECK(f["data"][0]["cell"] == json::array({"e"}));
  CHECK(f["data"][0]["ly"]["d"] == 0);
  CHECK(f["data"][1]["ly"]["d"] == 4);
  auto o = run_cli("dump orbit_table --type A1 --den 2");
  CHECK(o.out.find("1/2 | size 1 | stabilizer 2 | W_L trivial") != std::string::npos);
}

TEST_CASE("specialize") {
  auto a = json::parse(run_cli("specialize 4 --type A1 --m paper --json").out);
  CHECK(a["data"]["value"] == "-3");
  auto b = json::parse(run_cli("specialize 2 --type A1 --json").out);
  CHECK(b["data"]["value"] == "3");
  CHECK(run_cli("specialize 3 --type A2").code == 0);
}

TEST_CASE("output does not depend on the thread count") {
  for (const char* args : {"verify braid --type B2 --json", "verify polyconj --type A1 --json", "verify gluing --type A2 --json",
                           "verify canonical --type A2 --seed 3"}) {
    auto one = run_cli(std::string(args) + " --threads 1");
    auto four = run_cli(std::string(args) + " --threads 4");
    auto env = run_cli(args, "KLWB_THREADS=3");
    CHECK(one.out == four.out);
    CHECK(one.out == env.out);
    CHECK(one.code == four.code);
  }
}
