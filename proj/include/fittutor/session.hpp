#pragma once

#include "fittutor/compare.hpp"
#include "fittutor/reference.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fittutor
{
struct SessionConfig
{
   ComparisonConfig comparison;
   // A directional status must persist this many consecutive frames before
   // it is emitted. 0 (and 1) disable debouncing.
   int debounce_frames = 0;

   void validate() const; // throws Error{InvalidConfig}

   bool operator==(const SessionConfig&) const = default;
};

struct PairTally
{
   std::size_t match_frames      = 0;
   std::size_t correction_frames = 0; // directional or Indeterminate
   std::size_t not_visible_frames = 0;

   bool operator==(const PairTally&) const = default;
};

struct SessionReport
{
   std::size_t frames_processed  = 0;
   std::size_t frames_usable     = 0; // at least one pair visible
   std::size_t full_match_frames = 0; // usable, every visible pair Match
   // Keyed by pair id; std::map keeps the serialized order deterministic.
   std::map<std::string, PairTally> per_pair;

   bool operator==(const SessionReport&) const = default;
};

// ------------------------------------------------------------------ debounce

/// Per-pair persistence filter. Match, NotVisible and Indeterminate pass
/// through immediately. A directional status is held back (the last emitted
/// status is repeated) until the same status has been observed on `n`
/// consecutive frames. Before anything has been emitted the held value is
/// Indeterminate.
class Debouncer
{
 public:
   explicit Debouncer(int n) noexcept
       : n_(n)
   {}

   Status push(Status raw) noexcept;

 private:
   int n_;
   Status last_emitted_ = Status::Indeterminate;
   Status run_status_   = Status::Indeterminate;
   int run_length_      = 0;
};

std::vector<Status> apply_debounce(std::span<const Status> statuses, int n);

// ---------------------------------------------------------------- reporting

class ReportAccumulator
{
 public:
   void add(const Feedback& feedback);
   const SessionReport& report() const noexcept { return report_; }

 private:
   SessionReport report_;
};

SessionReport aggregate_report(std::span<const Feedback> feedbacks);

// ------------------------------------------------------------------- session

/// One ordered comparison pipeline against a fixed reference. Frames are
/// evaluated in the order they are pushed; timestamps are carried through and
/// never used for ordering.
///
/// Throws Error{PairSetMismatch} on construction when the reference profile
/// was not built over config.comparison.pairs.
class Session
{
 public:
   Session(ReferencePose reference, SessionConfig config);

   Feedback push(const PoseFrame& frame);

   const SessionReport& report() const noexcept { return acc_.report(); }
   const ReferencePose& reference() const noexcept { return reference_; }
   const SessionConfig& config() const noexcept { return config_; }

 private:
   ReferencePose reference_;
   SessionConfig config_;
   std::vector<Debouncer> debouncers_;
   ReportAccumulator acc_;
};

struct StreamResult
{
   std::vector<Feedback> feedback;
   SessionReport report;
};

StreamResult process_stream(std::span<const PoseFrame> frames,
                            const ReferencePose& reference,
                            const SessionConfig& config);

} // namespace fittutor
