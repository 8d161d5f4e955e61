#include "fittutor/server.hpp"
#include "fittutor/commands.hpp"
#include "fittutor/error.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <algorithm>
#include <cctype>
#include <atomic>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fittutor::server
{
namespace beast     = boost::beast;
namespace websocket = beast::websocket;
namespace net       = boost::asio;
using tcp           = net::ip::tcp;

// ----------------------------------------------------------------- protocol

std::string error_message(std::string_view code, std::string_view message)
{
   Json j;
   j["type"]    = "error";
   j["code"]    = code;
   j["message"] = message;
   return j.dump();
}

namespace
{
   bool is_reference_name(std::string_view name)
   {
      return !name.empty() && name.size() <= 128
             && std::ranges::all_of(name, [](char c) {
                   return std::isalnum(static_cast<unsigned char>(c)) || c == '-'
                          || c == '_' || c == '.';
                })
             && name.front() != '.';
   }

   std::string message_type(const Json& msg)
   {
      if(!msg.is_object()) return {};
      auto ii = msg.find("type");
      return ii != msg.end() && ii->is_string() ? ii->get<std::string>()
                                                : std::string{};
   }
} // namespace

ProtocolSession::ProtocolSession(ProtocolOptions options)
    : options_(std::move(options))
{}

ProtocolSession::~ProtocolSession()                                  = default;
ProtocolSession::ProtocolSession(ProtocolSession&&) noexcept         = default;
ProtocolSession& ProtocolSession::operator=(ProtocolSession&&) noexcept = default;

std::vector<std::string> ProtocolSession::on_message(std::string_view text)
{
   if(finished_) return {};

   Json msg;
   try {
      msg = parse_json(text);
   } catch(const Error& e) {
      if(!started()) {
         finished_ = true;
         return {error_message("bad-hello", e.what())};
      }
      return {error_message("bad-message", e.what())};
   }

   const auto type = message_type(msg);
   if(!started()) {
      if(type == "hello") return on_hello(msg);
      finished_ = true;
      return {error_message("bad-hello",
                            "the first message of a session must be a hello")};
   }

   if(type == "frame") return on_frame(msg);
   if(type == "end") {
      finished_ = true;
      Json j;
      j["type"]   = "report";
      j["report"] = report_to_json(session_->report());
      return {j.dump()};
   }
   if(type == "hello")
      return {error_message("bad-message", "session already started")};
   return {error_message("bad-message", "unknown message type '" + type + "'")};
}

std::vector<std::string> ProtocolSession::on_hello(const Json& msg)
{
   try {
      auto ii = msg.find("reference");
      if(ii == msg.end())
         throw Error(ErrorCode::MalformedDocument, "hello is missing \"reference\"");

      std::optional<ReferencePose> ref;
      if(ii->is_string()) {
         const auto name = ii->get<std::string>();
         if(!options_.reference_dir || !is_reference_name(name))
            throw Error(ErrorCode::MalformedDocument,
                        "unknown reference '" + name + "'");
         std::ifstream in(*options_.reference_dir / (name + ".json"),
                          std::ios::binary);
         if(!in)
            throw Error(ErrorCode::MalformedDocument,
                        "unknown reference '" + name + "'");
         std::ostringstream ss;
         ss << in.rdbuf();
         ref.emplace(parse_reference(ss.str()));
      } else {
         ref.emplace(reference_from_json(*ii));
      }

      SessionOverrides overrides;
      if(auto cc = msg.find("config"); cc != msg.end())
         overrides = overrides_from_json(*cc);

      auto prepared = cli::prepare_session(*ref, overrides);
      session_ = std::make_unique<Session>(std::move(prepared.reference),
                                           std::move(prepared.config));
      mirror_ = prepared.mirror;
   } catch(const Error& e) {
      finished_ = true;
      return {error_message("bad-hello", e.what())};
   }
   return {};
}

std::vector<std::string> ProtocolSession::on_frame(const Json& msg)
{
   try {
      auto ii = msg.find("frame");
      if(ii == msg.end())
         throw Error(ErrorCode::MalformedDocument, "frame message has no \"frame\"");
      auto frame = frame_from_json(*ii);
      if(mirror_) frame = mirror_frame(frame);
      Json j;
      j["type"]     = "feedback";
      j["feedback"] = feedback_to_json(session_->push(frame));
      return {j.dump()};
   } catch(const Error& e) {
      return {error_message("bad-frame", e.what())};
   }
}

// ---------------------------------------------------------------- transport

namespace
{
   void log_failure(beast::error_code ec, const char* what)
   {
      if(ec == websocket::error::closed || ec == net::error::operation_aborted
         || ec == net::error::eof || ec == net::error::connection_reset)
         return;
      std::cerr << "fittutor: " << what << ": " << ec.message() << '\n';
   }

   class Connection : public std::enable_shared_from_this<Connection>
   {
    public:
      Connection(tcp::socket&& socket, const ProtocolOptions& options)
          : ws_(std::move(socket))
          , protocol_(options)
      {}

      void run()
      {
         net::dispatch(ws_.get_executor(),
                       beast::bind_front_handler(&Connection::on_run,
                                                 shared_from_this()));
      }

    private:
      void on_run()
      {
         ws_.set_option(
             websocket::stream_base::timeout::suggested(beast::role_type::server));
         ws_.async_accept(
             beast::bind_front_handler(&Connection::on_accept, shared_from_this()));
      }

      void on_accept(beast::error_code ec)
      {
         if(ec) return log_failure(ec, "accept");
         do_read();
      }

      void do_read()
      {
         ws_.async_read(buffer_,
                        beast::bind_front_handler(&Connection::on_read,
                                                  shared_from_this()));
      }

      void on_read(beast::error_code ec, std::size_t)
      {
         if(ec) return log_failure(ec, "read");
         const auto text = beast::buffers_to_string(buffer_.data());
         buffer_.consume(buffer_.size());
         for(auto& reply : protocol_.on_message(text))
            outbox_.push_back(std::move(reply));
         flush_or_continue();
      }

      void flush_or_continue()
      {
         if(!outbox_.empty()) {
            ws_.text(true);
            ws_.async_write(net::buffer(outbox_.front()),
                            beast::bind_front_handler(&Connection::on_write,
                                                      shared_from_this()));
         } else if(protocol_.finished()) {
            ws_.async_close(websocket::close_code::normal,
                            beast::bind_front_handler(&Connection::on_close,
                                                      shared_from_this()));
         } else {
            do_read();
         }
      }

      void on_write(beast::error_code ec, std::size_t)
      {
         if(ec) return log_failure(ec, "write");
         outbox_.pop_front();
         flush_or_continue();
      }

      void on_close(beast::error_code ec)
      {
         if(ec) log_failure(ec, "close");
      }

      websocket::stream<beast::tcp_stream> ws_;
      beast::flat_buffer buffer_;
      std::deque<std::string> outbox_;
      ProtocolSession protocol_;
   };
} // namespace

struct Server::Impl
{
   explicit Impl(ServerOptions opts)
       : options(std::move(opts))
       , ioc(std::max(1, options.threads))
       , acceptor(net::make_strand(ioc))
   {}

   void do_accept()
   {
      acceptor.async_accept(net::make_strand(ioc),
                            [this](beast::error_code ec, tcp::socket socket) {
                               if(ec) {
                                  log_failure(ec, "accept");
                                  if(ec == net::error::operation_aborted) return;
                               } else {
                                  std::make_shared<Connection>(std::move(socket),
                                                               options.protocol)
                                      ->run();
                               }
                               if(acceptor.is_open()) do_accept();
                            });
   }

   ServerOptions options;
   net::io_context ioc;
   tcp::acceptor acceptor;
   std::vector<std::thread> workers;
   std::atomic<bool> stopped{false};
};

Server::Server(ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(options)))
{}

Server::~Server() { stop(); }

void Server::start()
{
   auto& i       = *impl_;
   const auto ep = tcp::endpoint(net::ip::make_address(i.options.address),
                                 i.options.port);
   i.acceptor.open(ep.protocol());
   i.acceptor.set_option(net::socket_base::reuse_address(true));
   i.acceptor.bind(ep);
   i.acceptor.listen(net::socket_base::max_listen_connections);
   i.do_accept();

   const int n = std::max(1, i.options.threads);
   for(int k = 0; k < n; ++k) i.workers.emplace_back([&i] { i.ioc.run(); });
}

void Server::stop()
{
   if(impl_->stopped.exchange(true)) return;
   net::post(impl_->acceptor.get_executor(), [this] {
      beast::error_code ec;
      impl_->acceptor.close(ec);
   });
   impl_->ioc.stop();
   for(auto& t : impl_->workers)
      if(t.joinable()) t.join();
}

std::uint16_t Server::port() const noexcept
{
   beast::error_code ec;
   const auto ep = impl_->acceptor.local_endpoint(ec);
   return ec ? 0 : ep.port();
}

} // namespace fittutor::server
