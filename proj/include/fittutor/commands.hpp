#pragma once

#include "fittutor/documents.hpp"

#include <iosfwd>
#include <string>

namespace fittutor::cli
{
// Exit statuses shared by all subcommands.
inline constexpr int k_exit_ok          = 0;
inline constexpr int k_exit_bad_input   = 2;
inline constexpr int k_exit_bad_output  = 3;

struct ExtractOptions
{
   std::string input_path;
   std::string output_path;
   std::string name;      // defaults to the input file stem
   bool external = false; // input is a PoseNet-style export
   AdapterOptions adapter;
   SessionOverrides overrides; // only the comparison fields are used
};

// Reads one frame, writes a reference document. Warns on `err` when any
// configured pair is invalid but still succeeds.
int cmd_extract(const ExtractOptions& opts, std::ostream& err);

struct CompareOptions
{
   std::string reference_path;
   std::string frames_path = "-"; // "-" reads `in`
   std::string output_path = "-"; // "-" writes `out`
   bool report             = false;
   SessionOverrides overrides;
};

// Streams newline-delimited frames against a reference, one feedback line per
// frame line. A malformed line yields {"error": {...}} and processing goes
// on. Mismatches are data: the exit status is 0 unless the reference or the
// output cannot be used.
int cmd_compare(const CompareOptions& opts,
                std::istream& in,
                std::ostream& out,
                std::ostream& err);

// Settings for a session: the reference's stored config with overrides
// applied, and the reference re-extracted under it.
struct PreparedSession
{
   ReferencePose reference;
   SessionConfig config;
   bool mirror = false;
};

PreparedSession prepare_session(const ReferencePose& reference,
                                const SessionOverrides& overrides);

// {"error": {"code": .., "message": .., "line": n}}
Json error_line(const std::string& code, const std::string& message, std::size_t line);

} // namespace fittutor::cli
