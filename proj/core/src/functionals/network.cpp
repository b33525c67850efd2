#include "cspp/functionals/network.hpp"

#include <stdexcept>

namespace cspp {

Network::Network() : shutdown_(std::make_unique<Shutdown>()), origin_(LogClock::now()) {}

void Network::watch(Channel<Message>& c) {
  const std::size_t id = channels_++;
  if (observer_) {
    c.in.state().observe([obs = observer_, id](const Message& m) { obs(id, m); });
  }
}

Channel<Message> Network::channel(ChannelKind kind) {
  auto c = channel_new<Message>(kind, shutdown_.get());
  watch(c);
  return c;
}

ChannelList<Message> Network::channel_list(std::size_t n) {
  if (n == 0) throw ConfigurationError("channel list needs at least one channel");
  ChannelList<Message> list;
  for (std::size_t i = 0; i < n; ++i) {
    auto c = channel(ChannelKind::one2one);
    list.ins.push_back(std::move(c.in));
    list.outs.push_back(std::move(c.out));
  }
  return list;
}

std::shared_ptr<Barrier> Network::barrier(std::size_t parties) {
  return barrier_new(parties, shutdown_.get());
}

void Network::add(std::string name, std::function<void()> body) {
  processes_.push_back(Process{std::move(name), std::move(body)});
}

std::shared_ptr<CollectOutcome> Network::result_slot() {
  results_.push_back(std::make_shared<CollectOutcome>());
  return results_.back();
}

void Network::observe(ChannelObserver observer) { observer_ = std::move(observer); }

void Network::enable_logging(std::filesystem::path file, bool echo) {
  if (log_channel_) return;
  log_channel_ = channel_new<LogMessage>(ChannelKind::any2one, shutdown_.get());
  ++channels_;
  log_file_ = std::move(file);
  log_echo_ = echo;
}

PhaseLogger Network::make_logger(std::string tag, PropertyFn property) {
  if (!log_channel_) throw std::logic_error("make_logger: logging is not enabled");
  ++loggers_;
  return PhaseLogger(log_channel_->out, std::move(tag), origin_, std::move(property));
}

std::size_t Network::process_count() const noexcept {
  return processes_.size() + (log_channel_ ? 1 : 0);
}

NetworkReport Network::run() {
  if (ran_) throw std::logic_error("a network can be run only once");
  ran_ = true;

  NetworkReport report;
  if (log_channel_) {
    LoggerConfig config{log_file_, loggers_, log_echo_, nullptr};
    add("logger", [in = log_channel_->in, config] { logger_run(in, config); });
    report.log_path = log_file_;
  }

  const auto start = std::chrono::steady_clock::now();
  report.statuses = run_parallel(std::move(processes_), *shutdown_);
  report.wall = std::chrono::steady_clock::now() - start;
  processes_.clear();

  if (const ProcessStatus* e = first_error(report.statuses)) {
    report.ok = false;
    report.code = e->code;
    report.message = e->name + ": " + e->message;
  }
  report.results = results_;
  return report;
}

}  // namespace cspp
