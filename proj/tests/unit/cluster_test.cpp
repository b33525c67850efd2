#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"
#include "cspp/bench/wire_types.hpp"
#include "cspp/cluster/net_channel.hpp"
#include "cspp/cluster/node.hpp"
#include "fixtures.hpp"

using namespace cspp;
using namespace cspp::cluster;
using namespace std::chrono_literals;

namespace {

Message data(Payload p, std::string tag = "") { return Data{std::move(p), std::move(tag)}; }

struct Opaque {
  int x = 0;
};

// Round-trips a message and checks the second encoding is byte-identical.
Message round_trip(const Message& m, const TypeRegistry& types) {
  const std::string body = encode(m, types);
  Message back = decode(body, types);
  CHECK(encode(back, types) == body);
  return back;
}

}  // namespace

TEST_CASE("frame for an int payload") {
  const auto types = basic_types();
  const std::string body = encode(data(Payload(42)), types);
  CHECK(body == R"({"type": "int", "data": 42})");
  const std::string f = frame(body);
  REQUIRE(f.size() == 31);
  CHECK(f.substr(0, 4) == std::string("\x00\x00\x00\x1B", 4));
  CHECK(frame_length(reinterpret_cast<const unsigned char*>(f.data())) == 27);
}

TEST_CASE("wire round trips") {
  const auto& types = bench::demo_types();

  auto m = round_trip(data(Payload(std::string("héllo \"q\"")), "t-1"), types);
  CHECK(std::get<Data>(m).payload.as<std::string>() == "héllo \"q\"");
  CHECK(std::get<Data>(m).tag == "t-1");

  m = round_trip(data(Payload(0.1 + 0.2)), types);
  CHECK(std::get<Data>(m).payload.as<double>() == 0.1 + 0.2);

  m = round_trip(Terminator{{{"emit", 3}, {"collect", 4}}}, types);
  CHECK(std::get<Terminator>(m).logs == std::vector<LogSummary>{{"emit", 3}, {"collect", 4}});

  bench::PiData pi{7, 0x5eed ^ 7, 100000, 78500};
  m = round_trip(data(Payload(pi), "pi-7"), types);
  const auto& pi2 = std::get<Data>(m).payload.as<bench::PiData>();
  CHECK(pi2.instance == 7);
  CHECK(pi2.seed == pi.seed);
  CHECK(pi2.within == 78500);

  bench::MandelbrotLine line;
  line.row = 3;
  line.width = 4;
  line.height = 2;
  line.pixel_delta = 0.013;
  line.centre_x = -0.5;
  line.rgb = {0, 255, 7, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  m = round_trip(data(Payload(line)), types);
  CHECK(std::get<Data>(m).payload.as<bench::MandelbrotLine>() == line);
}

TEST_CASE("bad payloads and bodies are rejected") {
  const auto types = basic_types();
  CHECK_THROWS_AS(encode(data(Payload(Opaque{})), types), SerialisationError);
  CHECK_THROWS_AS(decode(R"({"type": "Opaque", "data": {}})", types), SerialisationError);
  CHECK_THROWS_AS(decode(R"({"data": 1})", types), SerialisationError);
  CHECK_THROWS_AS(decode("not json", types), SerialisationError);
  CHECK_THROWS_AS(decode(R"({"type": "int", "data": "x"})", types), SerialisationError);
  CHECK_THROWS_AS(decode(R"({"type": "int"})", types), SerialisationError);
}

TEST_CASE("address parsing") {
  auto a = parse_address("10.0.0.2:4000");
  CHECK(a.host == "10.0.0.2");
  CHECK(a.port == 4000);
  CHECK_THROWS_AS(parse_address("nohost"), ClusterError);
  CHECK_THROWS_AS(parse_address("h:0"), ClusterError);
  CHECK_THROWS_AS(parse_address("h:70000"), ClusterError);
}

TEST_CASE("loopback net channel is a rendezvous") {
  const auto types = basic_types();
  Listener listener(0);
  const NetChannelAddress address{"127.0.0.1", listener.port(), 5};

  std::atomic<bool> written{false};
  auto writer = std::async(std::launch::async, [&] {
    NetOut out = net_connect(address, types);
    // Unregistered: fails locally, nothing reaches the reader.
    CHECK_THROWS_AS(out.write(data(Payload(Opaque{}))), SerialisationError);
    out.write(data(Payload(42), "x"));
    written = true;
    out.write(Terminator{});
  });

  std::uint32_t id = 0;
  NetIn in = net_accept(listener, types, &id, 5s);
  CHECK(id == 5);
  std::this_thread::sleep_for(50ms);
  CHECK_FALSE(written.load());
  Message m = in.read();
  REQUIRE(std::holds_alternative<Data>(m));
  CHECK(std::get<Data>(m).payload.as<int>() == 42);
  CHECK(std::get<Data>(m).tag == "x");
  CHECK(is_terminator(in.read()));
  writer.get();
  CHECK(written.load());
}

TEST_CASE("connection failures are reported with the address") {
  std::uint16_t port = 0;
  {
    Listener probe(0);
    port = probe.port();
  }
  const std::string where = "127.0.0.1:" + std::to_string(port);
  CHECK_THROWS_WITH_AS(Link::connect("127.0.0.1", port, 100ms), doctest::Contains(where.c_str()),
                       ClusterError);
  Listener idle(0);
  CHECK_THROWS_AS(idle.accept(50ms), ClusterError);
}

TEST_CASE("host and one loopback worker match a single-process run") {
  const auto types = basic_types();
  FunctionRegistry reg;
  reg.add("inc", testing::int_fn([](int x) { return x + 1; }));

  FarmJob job;
  job.emit = testing::int_emit(30);
  job.result = testing::int_collect();
  job.function = "inc";
  job.workers = 1;

  std::promise<std::uint16_t> port;
  HostOptions options;
  options.on_listening = [&](std::uint16_t p) { port.set_value(p); };
  auto host = std::async(std::launch::async, [&] { return host_run(job, types, options); });
  const auto p = port.get_future().get();
  WorkerOptions w;
  w.port = p;
  worker_run_remote(reg, types, w);
  auto outcome = host.get();
  auto got = outcome.result.as<std::vector<int>>();
  std::sort(got.begin(), got.end());
  std::vector<int> want;
  for (int i = 1; i <= 30; ++i) want.push_back(i + 1);
  CHECK(got == want);
  CHECK(outcome.collected == 30);
}

TEST_CASE("two loopback workers render the same Mandelbrot image") {
  bench::MandelbrotConfig cfg;
  cfg.width = 70;
  cfg.height = 40;
  cfg.pixel_delta = 0.05;
  auto job = bench::farm_job(bench::mandelbrot_spec(cfg), 2);

  std::promise<std::uint16_t> port;
  HostOptions options;
  options.on_listening = [&](std::uint16_t p) { port.set_value(p); };
  auto host = std::async(std::launch::async, [&] { return host_run(job, bench::demo_types(), options); });
  const auto p = port.get_future().get();
  std::vector<std::future<void>> workers;
  for (int i = 0; i < 2; ++i) {
    workers.push_back(std::async(std::launch::async, [p, i] {
      WorkerOptions w;
      w.port = p;
      w.name = "t" + std::to_string(i);
      worker_run_remote(bench::demo_registry(), bench::demo_types(), w);
    }));
  }
  auto outcome = host.get();
  for (auto& f : workers) f.get();
  const auto& image = outcome.result.as<bench::MandelbrotImage>().image;
  CHECK(image == bench::mandelbrot_sequential(cfg).image);
}

TEST_CASE("host reports missing and misconfigured workers") {
  const auto types = basic_types();
  FarmJob job;
  job.emit = testing::int_emit(3);
  job.result = testing::int_collect();
  job.function = "nosuch";
  job.workers = 1;

  HostOptions quick;
  quick.accept_timeout = 150ms;
  CHECK_THROWS_WITH_AS(host_run(job, types, quick), doctest::Contains("0 of 1 connected"), ClusterError);

  std::promise<std::uint16_t> port;
  HostOptions options;
  options.accept_timeout = 5s;
  options.on_listening = [&](std::uint16_t p) { port.set_value(p); };
  auto host = std::async(std::launch::async, [&] { return host_run(job, types, options); });
  WorkerOptions w;
  w.port = port.get_future().get();
  FunctionRegistry empty;
  CHECK_THROWS_WITH_AS(worker_run_remote(empty, types, w), doctest::Contains("nosuch"), ClusterError);
  CHECK_THROWS_WITH_AS(host.get(), doctest::Contains("worker 0"), ClusterError);
}

TEST_CASE("farm_job accepts only farm specs") {
  bench::MonteCarloConfig mc;
  mc.instances = 4;
  auto job = bench::farm_job(bench::montecarlo_spec(mc), 3);
  CHECK(job.function == "mc.within");
  CHECK(job.workers == 3);
  CHECK(job.emit.init_data == Params::array({4, mc.seed}));
  NetworkSpec bad;
  bad.nodes = {{"emit", {{"details", "mc.data"}}}, {"collect", {{"details", "mc.results"}}}};
  CHECK_THROWS_AS(bench::farm_job(bad, 1), SpecError);
}

TEST_CASE("a worker vanishing mid-run is fatal for the host") {
  const auto types = basic_types();
  FarmJob job;
  job.emit = testing::int_emit(50);
  job.result = testing::int_collect();
  job.function = "inc";
  job.workers = 1;

  std::promise<std::uint16_t> port;
  HostOptions options;
  options.accept_timeout = 5s;
  options.on_listening = [&](std::uint16_t p) { port.set_value(p); };
  auto host = std::async(std::launch::async, [&] { return host_run(job, types, options); });
  const auto p = port.get_future().get();
  {
    // A hand-driven worker: takes one item, then drops both connections.
    Link ctl = Link::connect("127.0.0.1", p);
    Json manifest;
    manifest["type"] = "manifest";
    manifest["name"] = "flaky";
    ctl.send_control(manifest);
    CHECK(ctl.receive_control()["type"] == "fragment");
    Json ready;
    ready["type"] = "ready";
    ctl.send_control(ready);
    Link res = Link::connect("127.0.0.1", p);
    Json hello;
    hello["type"] = "results";
    hello["worker"] = 0;
    res.send_control(hello);
    ctl.receive();
  }
  CHECK_THROWS_WITH_AS(host.get(), doctest::Contains("worker 0 (flaky)"), ClusterError);
}
