#pragma once

#include "fittutor/documents.hpp"
#include "fittutor/session.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fittutor::server
{
inline constexpr std::uint16_t k_default_port = 8765;

// Wire protocol, one JSON text message per document:
//
//   client -> {"type": "hello", "reference": <reference doc> | "<name>",
//              "config": <session config, optional>}
//   client -> {"type": "frame", "frame": <frame doc>}
//   client -> {"type": "end"}
//   server -> {"type": "feedback", "feedback": <feedback doc>}
//   server -> {"type": "report", "report": <report doc>}
//   server -> {"type": "error", "code": "<code>", "message": ".."}
//
// Error codes: "bad-hello" (session closes), "bad-frame" and "bad-message"
// (session continues).

struct ProtocolOptions
{
   // Directory searched for "<name>.json" when a Hello names a reference.
   std::optional<std::filesystem::path> reference_dir;
};

/// Transport-independent state machine for one client session. Each inbound
/// text message yields the outbound messages to send, in order.
class ProtocolSession
{
 public:
   explicit ProtocolSession(ProtocolOptions options = {});
   ~ProtocolSession();
   ProtocolSession(ProtocolSession&&) noexcept;
   ProtocolSession& operator=(ProtocolSession&&) noexcept;

   std::vector<std::string> on_message(std::string_view text);

   // Set once the server side has finished (bad hello or end); the transport
   // should close the connection after flushing the last replies.
   bool finished() const noexcept { return finished_; }
   bool started() const noexcept { return session_ != nullptr; }

 private:
   std::vector<std::string> on_hello(const Json& msg);
   std::vector<std::string> on_frame(const Json& msg);

   ProtocolOptions options_;
   std::unique_ptr<Session> session_;
   bool mirror_    = false;
   bool finished_  = false;
};

std::string error_message(std::string_view code, std::string_view message);

struct ServerOptions
{
   std::string address = "0.0.0.0";
   std::uint16_t port  = k_default_port; // 0 picks a free port
   int threads         = 4;
   ProtocolOptions protocol;
};

/// WebSocket server; each connection runs its own ProtocolSession. Sessions
/// share nothing mutable.
class Server
{
 public:
   explicit Server(ServerOptions options);
   ~Server();

   Server(const Server&) = delete;
   Server& operator=(const Server&) = delete;

   // Binds and starts the worker threads. Throws on bind failure.
   void start();
   // Stops accepting, drops open sessions and joins the workers.
   void stop();

   std::uint16_t port() const noexcept;

 private:
   struct Impl;
   std::unique_ptr<Impl> impl_;
};

} // namespace fittutor::server
