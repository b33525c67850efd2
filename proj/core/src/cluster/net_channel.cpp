#include "cspp/cluster/net_channel.hpp"

#include <array>
#include <optional>
#include <thread>

#include <boost/asio.hpp>

namespace cspp::cluster {

namespace asio = boost::asio;
using asio::ip::tcp;

std::string NetChannelAddress::to_string() const {
  return host + ":" + std::to_string(port) + "#" + std::to_string(channel);
}

NetChannelAddress parse_address(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw ClusterError("address '" + text + "' is not host:port");
  }
  NetChannelAddress a;
  a.host = text.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    port = -1;
  }
  if (port < 1 || port > 65535) throw ClusterError("bad port in '" + text + "'");
  a.port = static_cast<std::uint16_t>(port);
  return a;
}

struct Link::Impl {
  asio::io_context io;
  tcp::socket socket{io};
  std::string peer;
};

Link::Link() : impl_(std::make_unique<Impl>()) {}
Link::~Link() { close(); }
Link::Link(Link&&) noexcept = default;
Link& Link::operator=(Link&&) noexcept = default;

Link Link::connect(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout) {
  Link link;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  const std::string where = host + ":" + std::to_string(port);
  tcp::resolver resolver(link.impl_->io);
  boost::system::error_code ec;
  auto endpoints = resolver.resolve(host, std::to_string(port), ec);
  if (ec) throw ClusterError("cannot resolve " + where + ": " + ec.message());
  for (;;) {
    asio::connect(link.impl_->socket, endpoints, ec);
    if (!ec) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      throw ClusterError("cannot connect to " + where + ": " + ec.message());
    }
    link.impl_->socket.close();
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  link.impl_->socket.set_option(tcp::no_delay(true));
  link.impl_->peer = where;
  return link;
}

void Link::send(std::string_view body) {
  const std::string bytes = frame(body);
  boost::system::error_code ec;
  asio::write(impl_->socket, asio::buffer(bytes), ec);
  if (ec) throw ClusterError("write to " + impl_->peer + " failed: " + ec.message());
}

std::string Link::receive() {
  std::array<unsigned char, 4> header{};
  boost::system::error_code ec;
  asio::read(impl_->socket, asio::buffer(header), ec);
  if (ec) throw ClusterError("read from " + impl_->peer + " failed: " + ec.message());
  const std::uint32_t n = frame_length(header.data());
  if (n > max_frame_bytes) throw ClusterError("oversized frame from " + impl_->peer);
  std::string body(n, '\0');
  asio::read(impl_->socket, asio::buffer(body), ec);
  if (ec) throw ClusterError("read from " + impl_->peer + " failed: " + ec.message());
  return body;
}

void Link::close() noexcept {
  if (!impl_) return;
  boost::system::error_code ec;
  // shutdown only: the descriptor stays valid for a concurrent reader.
  impl_->socket.shutdown(tcp::socket::shutdown_both, ec);
}

bool Link::is_open() const noexcept { return impl_ && impl_->socket.is_open(); }

std::string Link::peer() const { return impl_ ? impl_->peer : std::string(); }

struct Listener::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
};

Listener::Listener(std::uint16_t port, const std::string& bind) : impl_(std::make_unique<Impl>()) {
  boost::system::error_code ec;
  const auto address = asio::ip::make_address(bind, ec);
  if (ec) throw ClusterError("bad bind address '" + bind + "'");
  const tcp::endpoint endpoint(address, port);
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
  impl_->acceptor.bind(endpoint, ec);
  if (ec) throw ClusterError("cannot listen on " + bind + ":" + std::to_string(port) + ": " + ec.message());
  impl_->acceptor.listen();
}

Listener::~Listener() = default;
Listener::Listener(Listener&&) noexcept = default;
Listener& Listener::operator=(Listener&&) noexcept = default;

std::uint16_t Listener::port() const { return impl_->acceptor.local_endpoint().port(); }

Link Listener::accept(std::chrono::milliseconds timeout) {
  tcp::socket peer(impl_->io);
  std::optional<boost::system::error_code> result;
  impl_->acceptor.async_accept(peer, [&](const boost::system::error_code& ec) { result = ec; });
  impl_->io.restart();
  impl_->io.run_for(timeout);
  if (!result) {
    impl_->acceptor.cancel();
    impl_->io.restart();
    impl_->io.run();
    throw ClusterError("no connection on port " + std::to_string(port()) + " within " +
                       std::to_string(timeout.count()) + " ms");
  }
  if (*result) throw ClusterError("accept failed: " + result->message());
  // Rehome the socket on the link's own io_context so the link can outlive
  // the listener.
  boost::system::error_code ec;
  const auto remote = peer.remote_endpoint(ec);
  const auto protocol = peer.local_endpoint().protocol();
  Link link;
  link.impl_->socket.assign(protocol, peer.release());
  link.impl_->socket.set_option(tcp::no_delay(true));
  link.impl_->peer = ec ? "?" : remote.address().to_string() + ":" + std::to_string(remote.port());
  return link;
}

void NetOut::write(Message m) {
  // Encode first: an unregistered type fails before any byte is sent.
  const std::string body = encode(m, *types_);
  link_->send(body);
  const Json ack = link_->receive_control();
  if (ack["type"] != "ACK") throw ClusterError("expected ACK from " + link_->peer());
}

Message NetIn::read() {
  Message m = decode(link_->receive(), *types_);
  Json ack;
  ack["type"] = "ACK";
  link_->send_control(ack);
  return m;
}

NetOut net_connect(const NetChannelAddress& address, const TypeRegistry& types,
                   std::chrono::milliseconds timeout) {
  auto link = std::make_shared<Link>(Link::connect(address.host, address.port, timeout));
  Json open;
  open["type"] = "open";
  open["channel"] = address.channel;
  link->send_control(open);
  return NetOut(std::move(link), types);
}

NetIn net_accept(Listener& listener, const TypeRegistry& types, std::uint32_t* channel,
                 std::chrono::milliseconds timeout) {
  auto link = std::make_shared<Link>(listener.accept(timeout));
  const Json open = link->receive_control();
  if (open["type"] != "open" || !open.contains("channel")) {
    throw ClusterError("expected an open frame from " + link->peer());
  }
  if (channel != nullptr) *channel = open["channel"].get<std::uint32_t>();
  return NetIn(std::move(link), types);
}

}  // namespace cspp::cluster
