// fittutor: reference extraction, offline comparison and the live session
// server.
//
//   fittutor extract frame.json ref.json
//   fittutor compare ref.json frames.ndjson --report
//   fittutor serve --port 8765 --ref-dir refs/

#include "fittutor/commands.hpp"
#include "fittutor/error.hpp"
#include "fittutor/server.hpp"

#include <CLI11.hpp>

#include <boost/asio/io_context.hpp>
#include <boost/asio/signal_set.hpp>

#include <csignal>
#include <cstdlib>
#include <iostream>

namespace
{
using fittutor::SessionOverrides;

struct ComparisonFlags
{
   double tolerance       = 0.5;
   double min_score       = 0.5;
   std::string pairs      = "table2";
   std::string mode       = "slope";
   double angle_tolerance = 15.0;
   int debounce           = 0;
   bool mirror            = false;

   CLI::Option* o_tolerance = nullptr;
   CLI::Option* o_min_score = nullptr;
   CLI::Option* o_pairs     = nullptr;
   CLI::Option* o_mode      = nullptr;
   CLI::Option* o_angle     = nullptr;
   CLI::Option* o_debounce  = nullptr;
   CLI::Option* o_mirror    = nullptr;

   void add_to(CLI::App& app, bool session_flags)
   {
      o_tolerance = app.add_option("--tolerance", tolerance,
                                   "Slope difference accepted as a match (default 0.5)")
                        ->check(CLI::PositiveNumber);
      o_min_score = app.add_option("--min-score", min_score,
                                   "Minimum keypoint confidence (default 0.5)")
                        ->check(CLI::Range(0.0, 1.0));
      o_pairs = app.add_option("--pairs", pairs, "Joint pair set (default table2)")
                    ->check(CLI::IsMember({"table2", "extended"}));
      o_mode = app.add_option("--mode", mode, "Comparison mode (default slope)")
                   ->check(CLI::IsMember({"slope", "angle"}));
      o_angle = app.add_option("--angle-tolerance", angle_tolerance,
                               "Degrees accepted in angle mode (default 15)")
                    ->check(CLI::PositiveNumber);
      if(session_flags) {
         o_debounce = app.add_option("--debounce", debounce,
                                     "Frames a correction must persist (default 0)")
                          ->check(CLI::NonNegativeNumber);
         o_mirror = app.add_flag("--mirror", mirror,
                                 "Mirror user frames before comparison");
      }
   }

   // Only flags given on the command line override the reference's config.
   SessionOverrides overrides() const
   {
      SessionOverrides o;
      if(o_tolerance->count()) o.tolerance = tolerance;
      if(o_min_score->count()) o.min_score = min_score;
      if(o_pairs->count()) o.pair_set = fittutor::to_pair_set(pairs);
      if(o_mode->count()) o.mode = fittutor::to_compare_mode(mode);
      if(o_angle->count()) o.angle_tolerance_deg = angle_tolerance;
      if(o_debounce && o_debounce->count()) o.debounce_frames = debounce;
      if(o_mirror && o_mirror->count()) o.mirror = mirror;
      return o;
   }
};

std::uint16_t default_port()
{
   if(const char* env = std::getenv("FITTUTOR_PORT")) {
      try {
         const int p = std::stoi(env);
         if(p > 0 && p < 65536) return static_cast<std::uint16_t>(p);
      } catch(const std::exception&) {
      }
      std::cerr << "warning: ignoring invalid FITTUTOR_PORT '" << env << "'\n";
   }
   return fittutor::server::k_default_port;
}

int run_serve(fittutor::server::ServerOptions opts)
{
   fittutor::server::Server server(std::move(opts));
   try {
      server.start();
   } catch(const std::exception& e) {
      std::cerr << "error: cannot listen: " << e.what() << '\n';
      return fittutor::cli::k_exit_bad_output;
   }
   std::cerr << "fittutor: listening on port " << server.port() << '\n';

   boost::asio::io_context signals_ctx;
   boost::asio::signal_set signals(signals_ctx, SIGINT, SIGTERM);
   signals.async_wait([](const boost::system::error_code&, int) {});
   signals_ctx.run();

   server.stop();
   return fittutor::cli::k_exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
   CLI::App app{"Posture coaching engine: compares body keypoints against a "
                "stored reference pose"};
   app.require_subcommand(1);

   // extract
   fittutor::cli::ExtractOptions extract;
   ComparisonFlags extract_flags;
   auto* cmd_extract = app.add_subcommand("extract",
                                          "Build a reference document from one frame");
   cmd_extract->add_option("input", extract.input_path, "Frame document")->required();
   cmd_extract->add_option("output", extract.output_path, "Reference document to write")
       ->required();
   cmd_extract->add_option("--name", extract.name,
                           "Reference name (default: input file stem)");
   cmd_extract->add_flag("--external", extract.external,
                         "Input is a PoseNet-style keypoint export");
   cmd_extract->add_option("--width", extract.adapter.default_width,
                           "Image width when an external export has none")
       ->check(CLI::PositiveNumber);
   cmd_extract->add_option("--height", extract.adapter.default_height,
                           "Image height when an external export has none")
       ->check(CLI::PositiveNumber);
   extract_flags.add_to(*cmd_extract, false);

   // compare
   fittutor::cli::CompareOptions compare;
   ComparisonFlags compare_flags;
   auto* cmd_compare = app.add_subcommand(
       "compare", "Compare a newline-delimited frame stream against a reference");
   cmd_compare->add_option("reference", compare.reference_path, "Reference document")
       ->required();
   cmd_compare->add_option("frames", compare.frames_path,
                           "Frame stream, one document per line ('-' for stdin)");
   cmd_compare->add_option("-o,--output", compare.output_path,
                           "Feedback stream ('-' for stdout)");
   cmd_compare->add_flag("--report", compare.report,
                         "Append the session report as the final line");
   compare_flags.add_to(*cmd_compare, true);

   // serve
   fittutor::server::ServerOptions serve;
   serve.port = default_port();
   std::string ref_dir;
   auto* cmd_serve = app.add_subcommand("serve", "Run the live session server");
   cmd_serve->add_option("--port", serve.port, "TCP port (default 8765 or $FITTUTOR_PORT)");
   cmd_serve->add_option("--address", serve.address, "Listen address");
   cmd_serve->add_option("--threads", serve.threads, "I/O threads")
       ->check(CLI::PositiveNumber);
   cmd_serve->add_option("--ref-dir", ref_dir,
                         "Directory of <name>.json references that a hello may name")
       ->check(CLI::ExistingDirectory);

   try {
      app.parse(argc, argv);
   } catch(const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? 0 : fittutor::cli::k_exit_bad_input;
   }

   try {
      if(*cmd_extract) {
         extract.overrides = extract_flags.overrides();
         return fittutor::cli::cmd_extract(extract, std::cerr);
      }
      if(*cmd_compare) {
         compare.overrides = compare_flags.overrides();
         return fittutor::cli::cmd_compare(compare, std::cin, std::cout, std::cerr);
      }
      if(*cmd_serve) {
         if(!ref_dir.empty()) serve.protocol.reference_dir = ref_dir;
         return run_serve(std::move(serve));
      }
   } catch(const fittutor::Error& e) {
      std::cerr << "error: " << str(e.code()) << ": " << e.what() << '\n';
      return fittutor::cli::k_exit_bad_input;
   }
   return fittutor::cli::k_exit_ok;
}
