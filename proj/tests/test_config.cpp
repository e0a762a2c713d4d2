#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsnorm/config.hpp"
#include "tsnorm/report.hpp"

using namespace tsnorm;
using nlohmann::json;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/2") == Rat(3, 2));
  CHECK(parse_rational("-3/4") == Rat(-3, 4));
  CHECK(parse_rational("2") == 2);
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(parse_rational("-1.5") == Rat(-3, 2));
  CHECK(rat_to_string(Rat(3, 2)) == "3/2");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rational("one"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("space descriptors parse") {
  const auto lp = parse_space(json::parse(R"({"kind":"lp","p":"3/2"})"));
  CHECK(lp->kind == SpaceKind::ground);
  CHECK(lp->ground.p == Rat(3, 2));

  const auto c0 = parse_space(json::parse(R"({"kind":"c0"})"));
  CHECK(c0->ground.is_c0());

  const auto ts = parse_space(json::parse(
      R"({"kind":"tsirelson","ground":{"kind":"lp","p":"1"},"gamma":"1/2","convexify_p":2})"));
  CHECK(ts->kind == SpaceKind::tsirelson);
  CHECK(ts->ts.gamma == Rat(1, 2));
  CHECK(ts->ts.convexify_p == 2);
  CHECK_FALSE(ts->exact_capable());

  const auto zv = parse_space(json::parse(
      R"({"kind":"zv","blocks":[1,2,1],"base":{"kind":"c0"},"v":{"kind":"lp","p":"1"}})"));
  CHECK(zv->kind == SpaceKind::zv);
  CHECK(zv->fdd.dim() == 4);
  CHECK(zv->exact_capable());

  const auto dual = parse_space(json::parse(R"({"kind":"dual","inner":{"kind":"lp","p":"1"}})"));
  CHECK(dual->kind == SpaceKind::dual);
  CHECK(dual->exact_capable());  // closed form: c0
}

TEST_CASE("space descriptor rejections") {
  CHECK_THROWS_AS(parse_space(json::parse(R"({"kind":"warp"})")), ConfigError);
  CHECK_THROWS_AS(parse_space(json::parse(
                      R"({"kind":"tsirelson","ground":{"kind":"lp","p":"1"},"gamma":"3/2"})")),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_space(json::parse(
          R"({"kind":"tsirelson","ground":{"kind":"lp","p":"1"},"gamma":"1/2","convexify_p":"3/2"})")),
      ConfigError);
  CHECK_THROWS_AS(parse_space(json::parse(R"({"kind":"lp","p":0.5})")), ConfigError);  // float
  CHECK_THROWS_AS(parse_space(json::parse(R"({"kind":"lp","p":"1/2"})")), ConfigError);
  CHECK_THROWS_AS(
      parse_space(json::parse(R"({"kind":"zv","blocks":[],"base":{"kind":"c0"},"v":{"kind":"c0"}})")),
      ConfigError);
}

TEST_CASE("vector literals") {
  const CoeffsQ x = parse_vector_literal({"3:1", "4:1/2", "10:-2"});
  CHECK(x.at(3) == 1);
  CHECK(x.at(4) == Rat(1, 2));
  CHECK(x.at(10) == -2);
  CHECK(parse_vector_literal({}).empty());

  CHECK_THROWS_AS(parse_vector_literal({"3:one"}), ConfigError);
  CHECK_THROWS_AS(parse_vector_literal({"x:1"}), ConfigError);
  CHECK_THROWS_AS(parse_vector_literal({"0:1"}), ConfigError);
  CHECK_THROWS_AS(parse_vector_literal({"31"}), ConfigError);
  CHECK_THROWS_AS(parse_vector_literal({"3:1", "3:2"}), ConfigError);
}

TEST_CASE("space descriptors round-trip through JSON") {
  const std::vector<std::string> descriptors = {
      R"({"kind":"lp","p":"3/2"})",
      R"({"kind":"c0"})",
      R"({"kind":"tsirelson","ground":{"kind":"lp","p":"1"},"gamma":"1/2","convexify_p":2})",
      R"({"kind":"zv","blocks":[1,2,1],"base":{"kind":"tsirelson","ground":{"kind":"c0"},"gamma":"2/3"},"v":{"kind":"lp","p":"2"}})",
      R"({"kind":"dual","inner":{"kind":"lp","p":"2"},"samples":50})",
  };
  for (const auto& text : descriptors) {
    const auto once = space_to_json(*parse_space(json::parse(text)));
    const auto twice = space_to_json(*parse_space(once));
    CHECK(once == twice);
    CHECK(parse_space(once)->to_string() == parse_space(json::parse(text))->to_string());
  }
}

TEST_CASE("exact capability tracks the evaluation route") {
  CHECK(parse_space(json::parse(R"({"kind":"lp","p":"1"})"))->exact_capable());
  CHECK_FALSE(parse_space(json::parse(R"({"kind":"lp","p":"2"})"))->exact_capable());

  // beyond the enumeration cap: exact only when the lp(1) segment DP applies
  auto blocks = json::array();
  for (int i = 0; i < 18; ++i) blocks.push_back(1);
  json big{{"kind", "zv"},
           {"blocks", blocks},
           {"base", json{{"kind", "c0"}}},
           {"v", json{{"kind", "lp"}, {"p", "1"}}}};
  CHECK(parse_space(big)->exact_capable());
  big["v"] = json{{"kind", "c0"}};
  CHECK_FALSE(parse_space(big)->exact_capable());
}

TEST_CASE("content digest is stable") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("tsnorm") == fnv1a64_hex("tsnorm"));
  CHECK(fnv1a64_hex("a") != fnv1a64_hex("b"));
}

TEST_CASE("report rendering has a stable field order") {
  CheckReport check;
  check.name = "demo";
  check.pass = true;
  check.margin = 0.125;
  check.margin_exact = "1/8";
  check.note("witness", "1:1");
  check.work = 42;

  const auto j = check_to_json(check);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"name", "verdict", "margin", "margin_exact", "details",
                                         "work"});

  const auto report = build_report("check demo", "demo", "deadbeef", 7, "auto", {j}, true);
  const std::string text = render_report(report);
  CHECK(text == render_report(report));  // rendering is deterministic
  CHECK(text.find("\"tool\"") < text.find("\"command\""));
  CHECK(text.find("\"command\"") < text.find("\"config_hash\""));
  CHECK(text.find("\"seed\"") < text.find("\"checks\""));
}
