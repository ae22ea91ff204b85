#pragma once

// Live WebSocket front end for Gateway. Everything (accept, client reads and
// writes, the 20 Hz engine tick) runs on one io_context thread, so the
// gateway is only ever touched from that thread.

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

#include "rover/gateway.hpp"

namespace rover::net {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

inline constexpr std::chrono::milliseconds kTickPeriod{50};

class WsService;

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket socket, WsService& service, Gateway::ClientId id)
      : ws_(std::move(socket)), service_(service), id_(id) {}

  void start();
  void send(std::shared_ptr<const std::string> text);
  Gateway::ClientId id() const { return id_; }

 private:
  void read();
  void write_next();

  websocket::stream<beast::tcp_stream> ws_;
  WsService& service_;
  Gateway::ClientId id_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> outbox_;
  bool open_{false};
};

class WsService {
 public:
  WsService(asio::io_context& io, Gateway& gateway, tcp::endpoint endpoint)
      : io_(io), gateway_(gateway), acceptor_(io), timer_(io) {
    acceptor_.open(endpoint.protocol());
    acceptor_.set_option(asio::socket_base::reuse_address(true));
    acceptor_.bind(endpoint);
    acceptor_.listen();
  }

  std::uint16_t port() const { return acceptor_.local_endpoint().port(); }

  void start() {
    accept();
    next_deadline_ = std::chrono::steady_clock::now() + kTickPeriod;
    arm_timer();
  }

  void stop() {
    beast::error_code ec;
    acceptor_.close(ec);
    timer_.cancel();
    sessions_.clear();
  }

  // Observer for every tick output, called on the io thread.
  void on_tick(std::function<void(const Gateway::TickOutput&)> fn) { tick_observer_ = std::move(fn); }

  std::size_t client_count() const { return sessions_.size(); }

 private:
  friend class WsSession;

  void accept() {
    acceptor_.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec != asio::error::operation_aborted) spdlog::warn("accept failed: {}", ec.message());
        return;
      }
      auto session = std::make_shared<WsSession>(std::move(socket), *this, next_id_++);
      sessions_.emplace(session->id(), session);
      session->start();
      accept();
    });
  }

  void arm_timer() {
    timer_.expires_at(next_deadline_);
    timer_.async_wait([this](beast::error_code ec) {
      if (ec) return;
      on_tick();
      const auto now = std::chrono::steady_clock::now();
      next_deadline_ += kTickPeriod;
      // Never burst to catch up after a stall.
      if (next_deadline_ < now) next_deadline_ = now + kTickPeriod;
      arm_timer();
    });
  }

  void on_tick() {
    const auto out = gateway_.tick();
    const auto state = std::make_shared<const std::string>(out.state);
    for (const auto& alert : out.alerts) broadcast(std::make_shared<const std::string>(alert));
    broadcast(state);
    for (const auto& [client, text] : out.errors) {
      if (const auto it = sessions_.find(client); it != sessions_.end()) {
        it->second->send(std::make_shared<const std::string>(text));
      }
    }
    if (tick_observer_) tick_observer_(out);
  }

  void broadcast(const std::shared_ptr<const std::string>& text) {
    for (auto& [id, s] : sessions_) s->send(text);
  }

  void on_message(Gateway::ClientId id, const std::string& text) {
    if (auto err = gateway_.submit(id, text)) {
      spdlog::debug("client {}: {}", id, *err);
      if (const auto it = sessions_.find(id); it != sessions_.end()) {
        it->second->send(std::make_shared<const std::string>(std::move(*err)));
      }
    }
  }

  void on_closed(Gateway::ClientId id) {
    if (sessions_.erase(id)) spdlog::info("client {} disconnected", id);
  }

  asio::io_context& io_;
  Gateway& gateway_;
  tcp::acceptor acceptor_;
  asio::steady_timer timer_;
  std::chrono::steady_clock::time_point next_deadline_;
  std::map<Gateway::ClientId, std::shared_ptr<WsSession>> sessions_;
  Gateway::ClientId next_id_{1};
  std::function<void(const Gateway::TickOutput&)> tick_observer_;
};

inline void WsSession::start() {
  ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
  ws_.text(true);
  ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
    if (ec) {
      self->service_.on_closed(self->id_);
      return;
    }
    spdlog::info("client {} connected", self->id_);
    self->open_ = true;
    self->write_next();
    self->read();
  });
}

inline void WsSession::read() {
  ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
    if (ec) {
      self->open_ = false;
      self->service_.on_closed(self->id_);
      return;
    }
    self->service_.on_message(self->id_, beast::buffers_to_string(self->buffer_.data()));
    self->buffer_.consume(self->buffer_.size());
    self->read();
  });
}

inline void WsSession::send(std::shared_ptr<const std::string> text) {
  outbox_.push_back(std::move(text));
  if (outbox_.size() == 1 && open_) write_next();
}

inline void WsSession::write_next() {
  if (outbox_.empty() || !open_) return;
  ws_.async_write(asio::buffer(*outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
    if (ec) {
      self->open_ = false;
      self->service_.on_closed(self->id_);
      return;
    }
    self->outbox_.pop_front();
    self->write_next();
  });
}

}  // namespace rover::net
