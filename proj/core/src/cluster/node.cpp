#include "cspp/cluster/node.hpp"

#include <unistd.h>

#include <memory>
#include <vector>

#include "cspp/cluster/net_channel.hpp"
#include "cspp/functionals/patterns.hpp"

namespace cspp::cluster {

namespace {

using LinkPtr = std::shared_ptr<Link>;

Json control(const char* type) {
  Json j;
  j["type"] = type;
  return j;
}

// Shuts every link when a bridge fails, so peers blocked in socket reads
// wake up as well as those blocked on local channels.
std::function<void()> guarded(std::vector<LinkPtr> links, std::function<void()> body) {
  return [links = std::move(links), body = std::move(body)] {
    try {
      body();
    } catch (...) {
      for (const auto& l : links) l->close();
      throw;
    }
  };
}

// Copies messages from a network channel onto a local one up to the terminator.
void pump_in(NetIn& in, Out<Message>& out, const std::string& who) {
  for (;;) {
    Message m;
    try {
      m = in.read();
    } catch (const std::exception& e) {
      throw ClusterError(who + ": " + e.what());
    }
    const bool last = is_terminator(m);
    out.write(std::move(m));
    if (last) return;
  }
}

void pump_out(In<Message>& in, NetOut& out, const std::string& who) {
  for (;;) {
    Message m = in.read();
    const bool last = is_terminator(m);
    try {
      out.write(std::move(m));
    } catch (const std::exception& e) {
      throw ClusterError(who + ": " + e.what());
    }
    if (last) return;
  }
}

struct Remote {
  std::string name;
  LinkPtr to;    // host -> worker: manifest, fragment, then work items
  LinkPtr from;  // worker -> host: results
};

}  // namespace

CollectOutcome host_run(const FarmJob& job, const TypeRegistry& types, const HostOptions& options) {
  const std::size_t n = job.workers;
  if (n == 0) throw ClusterError("a cluster farm needs at least one worker");
  Listener listener(options.port, options.bind);
  if (options.on_listening) options.on_listening(listener.port());

  std::vector<Remote> remotes(n);
  std::size_t manifests = 0;
  std::size_t results = 0;
  const auto deadline = std::chrono::steady_clock::now() + options.accept_timeout;
  while (manifests < n || results < n) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      throw ClusterError("timed out waiting for workers: " + std::to_string(manifests) + " of " +
                         std::to_string(n) + " connected");
    }
    LinkPtr link;
    try {
      link = std::make_shared<Link>(listener.accept(left));
    } catch (const ClusterError&) {
      throw ClusterError("timed out waiting for workers: " + std::to_string(manifests) + " of " +
                         std::to_string(n) + " connected");
    }
    const Json hello = link->receive_control();
    const auto type = hello["type"].get<std::string>();
    if (type == "manifest") {
      if (manifests == n) {
        link->send_control(control("reject"));
        continue;
      }
      const std::size_t k = manifests++;
      Remote& r = remotes[k];
      r.name = "worker " + std::to_string(k) + " (" + hello.value("name", std::string("?")) + ")";
      r.to = link;
      Json fragment = control("fragment");
      fragment["worker"] = k;
      fragment["function"] = job.function;
      fragment["modifier"] = Json::parse(job.modifier.dump());
      link->send_control(fragment);
      const Json reply = link->receive_control();
      if (reply["type"] == "error") {
        throw ClusterError(r.name + " rejected its fragment: " + reply.value("message", std::string()));
      }
      if (reply["type"] != "ready") throw ClusterError(r.name + " sent an unexpected reply");
    } else if (type == "results") {
      const auto k = hello.value("worker", n);
      if (k >= manifests || remotes[k].from) throw ClusterError("unexpected results connection");
      remotes[k].from = link;
      ++results;
    } else {
      throw ClusterError("unexpected '" + type + "' frame from " + link->peer());
    }
  }

  std::vector<LinkPtr> links;
  for (const auto& r : remotes) {
    links.push_back(r.to);
    links.push_back(r.from);
  }

  Network net;
  auto e = net.channel();
  auto fan = net.channel(ChannelKind::one2any);
  auto back = net.channel(ChannelKind::any2one);
  auto r = net.channel();
  add_emit(net, job.emit, e.out);
  add_spreader(net, {SpreadPolicy::fan_any, n}, e.in, {fan.out});
  for (std::size_t k = 0; k < n; ++k) {
    auto out = std::make_shared<NetOut>(remotes[k].to, types);
    auto in = std::make_shared<NetIn>(remotes[k].from, types);
    net.add("net-out." + std::to_string(k),
            guarded(links, [src = fan.in, out, who = remotes[k].name]() mutable { pump_out(src, *out, who); }));
    net.add("net-in." + std::to_string(k),
            guarded(links, [dst = back.out, in, who = remotes[k].name]() mutable { pump_in(*in, dst, who); }));
  }
  add_reducer(net, {ReducePolicy::fan_one, n, {}}, {back.in}, r.out);
  auto slot = add_collect(net, job.result, r.in);
  NetworkReport report = net.run();
  if (!report.ok) throw ClusterError(report.message);
  return std::move(*slot);
}

void worker_run_remote(const FunctionRegistry& registry, const TypeRegistry& types,
                       const WorkerOptions& options) {
  const std::string name = options.name.empty() ? "worker-" + std::to_string(::getpid()) : options.name;
  auto ctl = std::make_shared<Link>(Link::connect(options.host, options.port, options.connect_timeout));
  Json manifest = control("manifest");
  manifest["name"] = name;
  ctl->send_control(manifest);
  const Json fragment = ctl->receive_control();
  if (fragment["type"] == "reject") throw ClusterError("host has all the workers it needs");
  if (fragment["type"] != "fragment") throw ClusterError("expected a fragment from the host");
  const auto k = fragment["worker"].get<std::size_t>();
  const auto function = fragment["function"].get<std::string>();
  const WorkerFn* fn = registry.find<WorkerFn>(function);
  if (fn == nullptr) {
    Json error = control("error");
    error["message"] = "unknown function '" + function + "'";
    ctl->send_control(error);
    throw ClusterError("fragment names unknown function '" + function + "'");
  }
  ctl->send_control(control("ready"));

  auto res = std::make_shared<Link>(Link::connect(options.host, options.port, options.connect_timeout));
  Json hello = control("results");
  hello["worker"] = k;
  res->send_control(hello);

  const std::vector<LinkPtr> links{ctl, res};
  Network net;
  auto a = net.channel();
  auto b = net.channel();
  auto in = std::make_shared<NetIn>(ctl, types);
  auto out = std::make_shared<NetOut>(res, types);
  net.add("net-in", guarded(links, [dst = a.out, in]() mutable { pump_in(*in, dst, "host"); }));
  WorkerConfig config;
  config.function = *fn;
  config.modifier = Params::parse(fragment["modifier"].dump());
  add_worker(net, config, a.in, b.out);
  net.add("net-out", guarded(links, [src = b.in, out]() mutable { pump_out(src, *out, "host"); }));
  NetworkReport report = net.run();
  if (!report.ok) throw ClusterError("worker " + std::to_string(k) + ": " + report.message);
}

}  // namespace cspp::cluster
