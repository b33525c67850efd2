#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "cspp/cluster/wire.hpp"

namespace cspp::cluster {

struct NetChannelAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::uint32_t channel = 0;

  std::string to_string() const;
};

/// Parses "host:port".
NetChannelAddress parse_address(const std::string& text);

/// One TCP connection carrying length-prefixed frames. Blocking.
class Link {
 public:
  Link();
  ~Link();
  Link(Link&&) noexcept;
  Link& operator=(Link&&) noexcept;

  /// Connects, retrying refused connections until the timeout passes.
  static Link connect(const std::string& host, std::uint16_t port,
                      std::chrono::milliseconds timeout = std::chrono::seconds(5));

  void send(std::string_view body);
  std::string receive();

  void send_control(const Json& control) { send(canonical_dump(control)); }
  Json receive_control() { return parse_control(receive()); }

  /// Shuts the socket down in both directions; a thread blocked in receive
  /// on this link wakes with a ClusterError. Safe to call more than once.
  void close() noexcept;

  bool is_open() const noexcept;
  std::string peer() const;

 private:
  friend class Listener;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// A listening socket on the loopback or any address.
class Listener {
 public:
  /// Port 0 picks a free port; see port().
  explicit Listener(std::uint16_t port, const std::string& bind = "127.0.0.1");
  ~Listener();
  Listener(Listener&&) noexcept;
  Listener& operator=(Listener&&) noexcept;

  std::uint16_t port() const;

  /// Waits for one connection. Throws ClusterError after the timeout.
  Link accept(std::chrono::milliseconds timeout = std::chrono::seconds(30));

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Writing end of a network channel. write() returns once the reader has
/// acknowledged the frame, so the rendezvous contract of local channels
/// carries over.
class NetOut {
 public:
  NetOut(std::shared_ptr<Link> link, const TypeRegistry& types) : link_(std::move(link)), types_(&types) {}

  void write(Message m);

 private:
  std::shared_ptr<Link> link_;
  const TypeRegistry* types_;
};

/// Reading end of a network channel.
class NetIn {
 public:
  NetIn(std::shared_ptr<Link> link, const TypeRegistry& types) : link_(std::move(link)), types_(&types) {}

  Message read();

 private:
  std::shared_ptr<Link> link_;
  const TypeRegistry* types_;
};

/// Opens a network channel to a listener: the first frame names the channel.
NetOut net_connect(const NetChannelAddress& address, const TypeRegistry& types,
                   std::chrono::milliseconds timeout = std::chrono::seconds(5));

/// Accepts the writer of a network channel; returns the channel id it sent.
NetIn net_accept(Listener& listener, const TypeRegistry& types, std::uint32_t* channel = nullptr,
                 std::chrono::milliseconds timeout = std::chrono::seconds(30));

}  // namespace cspp::cluster
