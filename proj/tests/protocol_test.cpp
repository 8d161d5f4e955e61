#include "golden_support.hpp"
#include "protocol_support.hpp"

#include "fittutor/commands.hpp"
#include "fittutor/server.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace fittutor
{
namespace
{
using namespace fittutor::testing;

TEST(ProtocolSessionTest, HappyPath)
{
   const auto t = run_in_process(happy_script());
   expect_golden("protocol_happy.txt", t.text);

   server::ProtocolSession s;
   const auto script = happy_script();
   EXPECT_TRUE(s.on_message(script[0]).empty());
   EXPECT_TRUE(s.started());
   int feedback = 0;
   for(std::size_t i = 1; i < 4; ++i) {
      const auto out = s.on_message(script[i]);
      ASSERT_EQ(out.size(), 1u);
      EXPECT_EQ(parse_json(out[0])["type"], "feedback");
      ++feedback;
   }
   const auto last = s.on_message(k_end);
   ASSERT_EQ(last.size(), 1u);
   const auto report = report_from_json(parse_json(last[0])["report"]);
   EXPECT_EQ(report.frames_processed, 3u);
   EXPECT_TRUE(s.finished());
   EXPECT_TRUE(s.on_message(script[1]).empty());
}

TEST(ProtocolSessionTest, FrameBeforeHello)
{
   const auto t = run_in_process(before_hello_script());
   expect_golden("protocol_frame_before_hello.txt", t.text);
   const auto first = t.text.substr(t.text.find("< "));
   EXPECT_NE(first.find(R"("code":"bad-hello")"), std::string::npos);
}

TEST(ProtocolSessionTest, CorruptFrameMidSession)
{
   const auto t = run_in_process(corrupt_script());
   expect_golden("protocol_corrupt_frame.txt", t.text);
   EXPECT_NE(t.text.find(R"("code":"bad-frame")"), std::string::npos);
   EXPECT_NE(t.text.find(R"("type":"report")"), std::string::npos);
}

TEST(ProtocolSessionTest, BadHellos)
{
   for(const std::string& h : {std::string(R"({"type":"hello"})"),
                               std::string(R"({"type":"hello","reference":{"name":"x"}})"),
                               std::string("not json"),
                               std::string(R"({"type":"end"})"),
                               hello(tpose_ref(), parse_json(R"({"debounceFrames":-2})")),
                               hello_named("tpose")}) {
      server::ProtocolSession s;
      const auto out = s.on_message(h);
      ASSERT_EQ(out.size(), 1u) << h;
      EXPECT_EQ(parse_json(out[0])["code"], "bad-hello") << h;
      EXPECT_TRUE(s.finished());
   }
}

TEST(ProtocolSessionTest, NamedReferenceFromDirectory)
{
   const auto dir = std::filesystem::temp_directory_path()
                    / ("fittutor_refs_" + std::to_string(::getpid()));
   std::filesystem::create_directories(dir);
   std::ofstream(dir / "tpose.json") << serialize_reference(tpose_ref()) << '\n';

   server::ProtocolOptions opts{dir};
   auto script = happy_script();
   script[0]   = hello_named("tpose");
   auto named  = run_in_process(script, opts);
   auto inline_ = run_in_process(happy_script(), opts);
   // Only the hello line differs.
   EXPECT_EQ(named.text.substr(named.text.find('\n')),
             inline_.text.substr(inline_.text.find('\n')));

   for(const auto& bad : {"../tpose", "missing", ".hidden", ""}) {
      server::ProtocolSession s(opts);
      const auto out = s.on_message(hello_named(bad));
      ASSERT_EQ(out.size(), 1u);
      EXPECT_EQ(parse_json(out[0])["code"], "bad-hello") << bad;
   }
   std::filesystem::remove_all(dir);
}

TEST(ProtocolSessionTest, SecondHelloIsRejectedButSessionContinues)
{
   server::ProtocolSession s;
   s.on_message(hello(tpose_ref()));
   const auto out = s.on_message(hello(star_ref()));
   ASSERT_EQ(out.size(), 1u);
   EXPECT_EQ(parse_json(out[0])["code"], "bad-message");
   EXPECT_FALSE(s.finished());
}

TEST(ProtocolSessionTest, TranscriptEqualsCliCompare)
{
   const auto ref        = tpose_ref();
   const Json config     = parse_json(R"({"comparison":{"pairSet":"extended"},"mirror":true})");
   std::vector<std::string> script = {hello(ref, config)};
   for(const auto& l : fixture_lines("stream.ndjson")) script.push_back(frame_msg(l));
   script.push_back(k_end);

   server::ProtocolSession s;
   std::string server_lines;
   for(const auto& m : script)
      for(const auto& r : s.on_message(m)) {
         const auto j = parse_json(r);
         server_lines += j.at(j["type"] == "feedback" ? "feedback" : "report").dump() + "\n";
      }

   const auto dir = std::filesystem::temp_directory_path()
                    / ("fittutor_cli_eq_" + std::to_string(::getpid()));
   std::filesystem::create_directories(dir);
   const auto ref_path = (dir / "ref.json").string();
   std::ofstream(ref_path) << serialize_reference(ref);

   cli::CompareOptions o{.reference_path = ref_path,
                         .frames_path    = fixture_path("stream.ndjson"),
                         .report         = true};
   o.overrides.pair_set = PairSet::Extended;
   o.overrides.mirror   = true;
   std::istringstream in;
   std::ostringstream out, err;
   ASSERT_EQ(cli::cmd_compare(o, in, out, err), 0);
   EXPECT_EQ(server_lines, out.str());
   std::filesystem::remove_all(dir);
}

class ServerTest : public ::testing::Test
{
 protected:
   void SetUp() override
   {
      server::ServerOptions o;
      o.address = "127.0.0.1";
      o.port    = 0;
      server_   = std::make_unique<server::Server>(o);
      server_->start();
      ASSERT_NE(server_->port(), 0);
   }
   void TearDown() override { server_->stop(); }

   std::unique_ptr<server::Server> server_;
};

TEST_F(ServerTest, HappyPathMatchesGolden)
{
   EXPECT_EQ(ws_happy(server_->port()).text, read_text(golden_path("protocol_happy.txt")));
}

TEST_F(ServerTest, FrameBeforeHelloMatchesGolden)
{
   EXPECT_EQ(ws_before_hello(server_->port()).text,
             read_text(golden_path("protocol_frame_before_hello.txt")));
}

TEST_F(ServerTest, CorruptFrameMatchesGolden)
{
   EXPECT_EQ(ws_corrupt(server_->port()).text,
             read_text(golden_path("protocol_corrupt_frame.txt")));
}

TEST_F(ServerTest, TwoInterleavedSessions)
{
   const auto [a, b] = ws_interleaved(server_->port());
   expect_golden("protocol_concurrent_a.txt", a.text);
   expect_golden("protocol_concurrent_b.txt", b.text);

   // Each transcript equals the session run alone.
   const auto frames = fixture_lines("stream.ndjson");
   std::vector<std::string> sa = {hello(tpose_ref())}, sb = {hello(star_ref())};
   for(std::size_t i = 0; i < frames.size(); ++i) {
      sa.push_back(frame_msg(frames[i % 2 ? frames.size() - 1 - i : i]));
      sb.push_back(frame_msg(frames[i % 2 ? i : frames.size() - 1 - i]));
   }
   sa.push_back(k_end);
   sb.push_back(k_end);
   EXPECT_EQ(a.text, run_in_process(sa).text);
   EXPECT_EQ(b.text, run_in_process(sb).text);
}

TEST_F(ServerTest, SixtyFourConcurrentSessions)
{
   std::mt19937_64 rng(8);
   std::vector<std::string> frames;
   for(int i = 0; i < 25; ++i) frames.push_back(serialize_frame(random_frame(rng)));

   constexpr int k_clients = 64;
   std::vector<std::string> transcripts(k_clients);
   std::vector<std::thread> threads;
   for(int k = 0; k < k_clients; ++k)
      threads.emplace_back([&, k] {
         WsClient c(server_->port());
         c.send(hello(k % 2 ? star_ref() : tpose_ref()));
         for(const auto& f : frames) {
            c.send(frame_msg(f));
            c.receive();
         }
         c.send(k_end);
         c.receive();
         c.receive();
         transcripts[k] = c.transcript.text;
      });
   for(auto& t : threads) t.join();

   for(int parity = 0; parity < 2; ++parity) {
      std::vector<std::string> script = {hello(parity ? star_ref() : tpose_ref())};
      for(const auto& f : frames) script.push_back(frame_msg(f));
      script.push_back(k_end);
      const auto expected = run_in_process(script).text;
      for(int k = parity; k < k_clients; k += 2) EXPECT_EQ(transcripts[k], expected) << k;
   }
}

} // namespace
} // namespace fittutor
