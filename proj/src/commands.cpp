#include "fittutor/commands.hpp"
#include "fittutor/error.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fittutor::cli
{
namespace
{
   std::optional<std::string> read_file(const std::string& path)
   {
      std::ifstream in(path, std::ios::binary);
      if(!in) return std::nullopt;
      std::ostringstream ss;
      ss << in.rdbuf();
      return std::move(ss).str();
   }

   bool is_blank(std::string_view s)
   {
      return s.find_first_not_of(" \t\r") == std::string_view::npos;
   }

   std::string join(const std::vector<std::string>& xs)
   {
      std::string out;
      for(const auto& x : xs) {
         if(!out.empty()) out += ", ";
         out += x;
      }
      return out;
   }
} // namespace

Json error_line(const std::string& code, const std::string& message, std::size_t line)
{
   Json e;
   e["code"]    = code;
   e["message"] = message;
   e["line"]    = line;
   Json j;
   j["error"] = std::move(e);
   return j;
}

PreparedSession prepare_session(const ReferencePose& reference,
                                const SessionOverrides& overrides)
{
   auto config = overrides.apply(reference.config);
   return PreparedSession{with_config(reference, config.comparison),
                          std::move(config),
                          overrides.mirror.value_or(false)};
}

// ---------------------------------------------------------------- extract

int cmd_extract(const ExtractOptions& opts, std::ostream& err)
{
   const auto text = read_file(opts.input_path);
   if(!text) {
      err << "error: cannot read '" << opts.input_path << "'\n";
      return k_exit_bad_input;
   }

   std::optional<ReferencePose> ref;
   try {
      const auto frame = opts.external
                             ? adapt_external_keypoints(*text, opts.adapter)
                             : parse_frame(*text);
      const auto config = opts.overrides.apply(ComparisonConfig{});
      auto name         = opts.name.empty()
                              ? std::filesystem::path(opts.input_path).stem().string()
                              : opts.name;
      ref.emplace(make_reference(std::move(name), frame, config.comparison));
   } catch(const Error& e) {
      err << "error: " << opts.input_path << ": " << str(e.code()) << ": "
          << e.what() << '\n';
      return k_exit_bad_input;
   }

   const auto validity = validate_frame(ref->frame, ref->config);
   if(!validity.invalid_pairs.empty()) {
      err << "warning: " << (validity.n_pairs - validity.invalid_pairs.size())
          << " of " << validity.n_pairs << " pairs valid (invalid: "
          << join(validity.invalid_pairs) << ")\n";
   }

   std::ofstream out(opts.output_path, std::ios::binary | std::ios::trunc);
   if(out) out << serialize_reference(*ref) << '\n';
   if(!out || !out.flush()) {
      err << "error: cannot write '" << opts.output_path << "'\n";
      return k_exit_bad_output;
   }
   return k_exit_ok;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const CompareOptions& opts,
                std::istream& in,
                std::ostream& out,
                std::ostream& err)
{
   const auto ref_text = read_file(opts.reference_path);
   if(!ref_text) {
      err << "error: cannot read reference '" << opts.reference_path << "'\n";
      return k_exit_bad_input;
   }

   std::optional<PreparedSession> prepared;
   try {
      prepared.emplace(prepare_session(parse_reference(*ref_text), opts.overrides));
   } catch(const Error& e) {
      err << "error: " << opts.reference_path << ": " << str(e.code()) << ": "
          << e.what() << '\n';
      return k_exit_bad_input;
   }

   std::ifstream frames_file;
   std::istream* frames = &in;
   if(opts.frames_path != "-") {
      frames_file.open(opts.frames_path, std::ios::binary);
      if(!frames_file) {
         err << "error: cannot read frames '" << opts.frames_path << "'\n";
         return k_exit_bad_input;
      }
      frames = &frames_file;
   }

   std::ofstream out_file;
   std::ostream* sink = &out;
   if(opts.output_path != "-") {
      out_file.open(opts.output_path, std::ios::binary | std::ios::trunc);
      if(!out_file) {
         err << "error: cannot write '" << opts.output_path << "'\n";
         return k_exit_bad_output;
      }
      sink = &out_file;
   }

   Session session(prepared->reference, prepared->config);
   std::string line;
   std::size_t line_no = 0;
   while(std::getline(*frames, line)) {
      ++line_no;
      if(is_blank(line)) continue;
      try {
         auto frame = parse_frame(line);
         if(prepared->mirror) frame = mirror_frame(frame);
         *sink << serialize_feedback(session.push(frame)) << '\n';
      } catch(const Error& e) {
         *sink << error_line(std::string(str(e.code())), e.what(), line_no).dump()
               << '\n';
      }
   }
   if(opts.report) *sink << serialize_report(session.report()) << '\n';

   if(!sink->flush()) {
      err << "error: failed writing feedback\n";
      return k_exit_bad_output;
   }
   return k_exit_ok;
}

} // namespace fittutor::cli
