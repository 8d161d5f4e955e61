#pragma once

// JSON documents exchanged with files, pipes and the session server. All
// writers emit compact single-line text with a fixed key order and
// shortest round-trip number formatting, so equal values always produce
// byte-identical documents.

#include "fittutor/compare.hpp"
#include "fittutor/reference.hpp"
#include "fittutor/session.hpp"
#include "fittutor/skeleton.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace fittutor
{
using Json = nlohmann::ordered_json;

// Throws Error{MalformedDocument} on a syntax error.
Json parse_json(std::string_view text);

// ---------------------------------------------------------------- frame
//
// {"t": <int ms>, "w": <px>, "h": <px>,
//  "keypoints": [{"part": "<name>", "x": .., "y": .., "score": ..} x 17]}

Json frame_to_json(const PoseFrame&);
PoseFrame frame_from_json(const Json&);

std::string serialize_frame(const PoseFrame&);
// Throws MalformedDocument, MissingPart, DuplicatePart, OutOfRangeScore,
// UnknownPartName or InvalidFrame. Unknown extra fields are ignored.
PoseFrame parse_frame(std::string_view text);

// ------------------------------------------------------- external export
//
// PoseNet-style output: either a bare keypoint list or an object holding
// "keypoints" (optionally under "pose"), each entry
// {"part": "<name>", "position": {"x": .., "y": ..}, "score": ..}. Optional
// top-level "width", "height" and "timestamp".

struct AdapterOptions
{
   double default_width  = 640.0;
   double default_height = 480.0;
};

PoseFrame adapt_external_keypoints(std::string_view text,
                                   const AdapterOptions& options = {});

// --------------------------------------------------------------- config

Json config_to_json(const ComparisonConfig&);
// Missing keys keep the values of `base`.
ComparisonConfig config_from_json(const Json&, const ComparisonConfig& base = {});

// Partial settings layered over a reference's stored config. Comes from CLI
// flags or from the "config" member of a session Hello.
struct SessionOverrides
{
   std::optional<double> tolerance;
   std::optional<double> min_score;
   std::optional<PairSet> pair_set;
   std::optional<CompareMode> mode;
   std::optional<double> angle_tolerance_deg;
   std::optional<int> debounce_frames;
   std::optional<bool> mirror;

   SessionConfig apply(const ComparisonConfig& base) const;
};

// {"comparison": {<config keys, all optional>}, "debounceFrames": n,
//  "mirror": bool}
SessionOverrides overrides_from_json(const Json&);
Json session_config_to_json(const SessionConfig&, bool mirror);

// ------------------------------------------------------------ reference
//
// {"name": .., "frame": <frame>, "config": <config>,
//  "profile": {"<pairId>": {"slope": <number> | "vertical" | null,
//                           "valid": <bool>}}}

Json reference_to_json(const ReferencePose&);
// The stored profile is a cache; it is recomputed from frame and config.
ReferencePose reference_from_json(const Json&);

std::string serialize_reference(const ReferencePose&);
ReferencePose parse_reference(std::string_view text);

Json profile_to_json(const SlopeProfile&);

// ------------------------------------------------------------- feedback
//
// {"t": <ms>, "pairs": {"<pairId>": {"status": "<Status>",
//                                    "deviation": <number, optional>}}}

Json feedback_to_json(const Feedback&);
Feedback feedback_from_json(const Json&);
std::string serialize_feedback(const Feedback&);
Feedback parse_feedback(std::string_view text);

// --------------------------------------------------------------- report
//
// {"framesProcessed": n, "framesUsable": n, "fullMatchFrames": n,
//  "perPair": {"<pairId>": {"matchFrames": n, "correctionFrames": n,
//                           "notVisibleFrames": n}}}

Json report_to_json(const SessionReport&);
SessionReport report_from_json(const Json&);
std::string serialize_report(const SessionReport&);
SessionReport parse_report(std::string_view text);

} // namespace fittutor
