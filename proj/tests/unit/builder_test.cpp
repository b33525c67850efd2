#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "cspp/builder/builder.hpp"
#include "fixtures.hpp"

using namespace cspp;

namespace {

FunctionRegistry registry() {
  FunctionRegistry reg;
  reg.add("ints", testing::int_emit(20));
  reg.add("none", testing::int_emit(std::vector<int>{}));
  reg.add("gather", testing::int_collect());
  reg.add("inc", testing::int_fn([](int x) { return x + 1; }));
  reg.add("double", testing::int_fn([](int x) { return 2 * x; }));
  reg.add("fail", WorkerFn([](Payload&, const Params&, Payload*) { return StepResult::error(-7); }));
  reg.add("value", KeyFn([](const Payload& p) { return static_cast<double>(p.as<int>()); }));
  return reg;
}

std::string farm(int destinations, int workers) {
  return R"({"nodes": [
    {"kind": "emit", "config": {"details": "ints"}},
    {"kind": "spreader", "config": {"policy": "fanAny", "destinations": )" +
         std::to_string(destinations) + R"(}},
    {"kind": "group", "config": {"workers": )" + std::to_string(workers) + R"(, "function": "double"}},
    {"kind": "reducer", "config": {"policy": "fanOne", "sources": )" + std::to_string(workers) + R"(}},
    {"kind": "collect", "config": {"details": "gather"}}
  ]})";
}

bool mentions(const std::vector<Diagnostic>& diags, std::size_t node, const std::string& text) {
  return std::any_of(diags.begin(), diags.end(),
                     [&](const Diagnostic& d) { return d.node == node && d.reason.find(text) != std::string::npos; });
}

std::vector<Diagnostic> load_errors(const std::string& text) {
  try {
    load_spec(text);
  } catch (const SpecError& e) {
    return e.diagnostics();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal emit collect network validates and runs") {
  auto reg = registry();
  auto spec = load_spec(R"({"nodes": [{"kind": "emit", "config": {"details": "none"}},
                                      {"kind": "collect", "config": {"details": "gather"}}]})");
  CHECK(validate(spec, reg).empty());
  auto net = build(spec, reg);
  CHECK(net.process_count() == 2);
  CHECK(net.channel_count() == 1);
  auto report = run(net);
  REQUIRE(report.ok);
  REQUIRE(report.results.size() == 1);
  CHECK(report.results[0]->collected == 0);
}

TEST_CASE("single stage pipeline is rejected") {
  auto reg = registry();
  auto spec = load_spec(R"({"nodes": [
    {"kind": "emit", "config": {"details": "ints"}},
    {"kind": "pipeline", "config": {"stages": 1, "stageOps": ["inc"]}},
    {"kind": "collect", "config": {"details": "gather"}}]})");
  auto diags = validate(spec, reg);
  CHECK(mentions(diags, 1, "pipeline requires >= 2 stages"));
  CHECK_THROWS_AS(build(spec, reg), SpecError);
}

TEST_CASE("fan arity mismatch names the group") {
  auto reg = registry();
  auto diags = validate(load_spec(farm(4, 3)), reg);
  CHECK(mentions(diags, 2, "any(3) does not match output any(4)"));
  CHECK(validate(load_spec(farm(3, 3)), reg).empty());
}

TEST_CASE("unknown registry names are reported against their node") {
  auto reg = registry();
  auto spec = load_spec(R"({"nodes": [
    {"kind": "emit", "config": {"details": "ints"}},
    {"kind": "worker", "config": {"function": "triple"}},
    {"kind": "collect", "config": {"details": "inc"}}]})");
  auto diags = validate(spec, reg);
  CHECK(mentions(diags, 1, "unknown registry name 'triple'"));
  CHECK(mentions(diags, 2, "expected result"));
}

TEST_CASE("load_spec reports unknown kinds, missing fields and bad syntax") {
  auto unknown = load_errors(R"({"nodes": [{"kind": "emit", "config": {"details": "ints"}},
                                           {"kind": "wrker", "config": {}}]})");
  CHECK(mentions(unknown, 1, "unknown node kind 'wrker'"));

  auto missing = load_errors(R"({"nodes": [{"kind": "group", "config": {"function": "inc"}}]})");
  CHECK(mentions(missing, 0, "'workers'"));

  auto syntax = load_errors("{\n  \"nodes\": [\n    {\"kind\": }\n]}");
  REQUIRE(syntax.size() == 1);
  CHECK(syntax[0].node == Diagnostic::npos);
  CHECK(syntax[0].reason.find("line 3") != std::string::npos);
}

TEST_CASE("farm spec has workers plus four processes") {
  auto reg = registry();
  for (int w : {1, 2, 5}) {
    auto spec = load_spec(farm(w, w));
    CHECK(spec.nodes.size() == 5);
    auto net = build(spec, reg);
    CHECK(net.process_count() == static_cast<std::size_t>(w) + 4);
    CHECK(net.channel_count() == 4);
    auto report = run(net);
    REQUIRE(report.ok);
    auto got = report.results[0]->result.as<std::vector<int>>();
    std::sort(got.begin(), got.end());
    std::vector<int> want;
    for (int i = 1; i <= 20; ++i) want.push_back(2 * i);
    CHECK(got == want);
    CHECK(report.wall.count() > 0);
  }
}

TEST_CASE("log file adds a logger process and a log channel") {
  auto reg = registry();
  const auto path = std::filesystem::temp_directory_path() / "cspp_builder_log.csv";
  auto spec = load_spec(farm(2, 2));
  auto plain = build(spec, reg);
  spec.nodes[2].log_phase = "work";
  spec.log_file = path.string();
  auto logged = build(spec, reg);
  CHECK(logged.process_count() == plain.process_count() + 1);
  CHECK(logged.channel_count() == plain.channel_count() + 1);
  auto report = run(logged);
  REQUIRE(report.ok);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

TEST_CASE("logging on a connector is rejected") {
  auto reg = registry();
  auto spec = load_spec(farm(2, 2));
  spec.nodes[1].log_phase = "spread";
  CHECK(mentions(validate(spec, reg), 1, "logging is not supported"));
}

TEST_CASE("one spec builds independent networks") {
  auto reg = registry();
  auto spec = load_spec(farm(3, 3));
  auto a = build(spec, reg);
  auto b = build(spec, reg);
  REQUIRE(a.run().ok);
  CHECK(a.has_run());
  CHECK_FALSE(b.has_run());
  REQUIRE(b.run().ok);
  CHECK_THROWS_AS(a.run(), std::logic_error);
}

TEST_CASE("worker error code reaches the report") {
  auto reg = registry();
  auto spec = load_spec(R"({"nodes": [
    {"kind": "emit", "config": {"details": "ints"}},
    {"kind": "worker", "config": {"function": "fail"}},
    {"kind": "collect", "config": {"details": "gather"}}]})");
  auto net = build(spec, reg);
  auto report = run(net);
  CHECK_FALSE(report.ok);
  CHECK(report.code == -7);
}

TEST_CASE("list ports, pipelines and composites wire up") {
  auto reg = registry();
  auto spec = load_spec(R"({"nodes": [
    {"kind": "emit", "config": {"details": "ints"}},
    {"kind": "spreader", "config": {"policy": "fanList", "destinations": 3}},
    {"kind": "composite", "config": {"type": "groupOfPipelineCollects", "groups": 3, "input": "list",
                                     "stages": 2, "stageOps": ["inc", "double"], "results": "gather"}}]})");
  REQUIRE(validate(spec, reg).empty());
  auto report = build(spec, reg).run();
  REQUIRE(report.ok);
  REQUIRE(report.results.size() == 3);
  std::vector<int> all;
  for (const auto& r : report.results)
    for (int v : r->result.as<std::vector<int>>()) all.push_back(v);
  std::sort(all.begin(), all.end());
  REQUIRE(all.size() == 20);
  for (int i = 1; i <= 20; ++i) CHECK(all[i - 1] == 2 * (i + 1));
}

TEST_CASE("sorted merge reducer requires a key") {
  auto reg = registry();
  auto spec = load_spec(R"({"nodes": [
    {"kind": "emit", "config": {"details": "ints"}},
    {"kind": "spreader", "config": {"policy": "fanList", "destinations": 2}},
    {"kind": "group", "config": {"workers": 2, "function": "inc", "input": "list", "output": "list"}},
    {"kind": "reducer", "config": {"policy": "sortedMerge", "sources": 2}},
    {"kind": "collect", "config": {"details": "gather"}}]})");
  CHECK(mentions(validate(spec, reg), 3, "needs a 'key'"));
  spec.nodes[3].config["key"] = "value";
  auto report = build(spec, reg).run();
  REQUIRE(report.ok);
  auto got = report.results[0]->result.as<std::vector<int>>();
  CHECK(std::is_sorted(got.begin(), got.end()));
  CHECK(got.size() == 20);
}
