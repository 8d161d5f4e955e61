#include "fittutor/session.hpp"
#include "fittutor/error.hpp"

#include <algorithm>

namespace fittutor
{
void SessionConfig::validate() const
{
   comparison.validate();
   if(debounce_frames < 0)
      throw Error(ErrorCode::InvalidConfig, "debounceFrames must be >= 0");
}

// ------------------------------------------------------------------ debounce

Status Debouncer::push(Status raw) noexcept
{
   if(raw == run_status_) {
      ++run_length_;
   } else {
      run_status_ = raw;
      run_length_ = 1;
   }

   if(!is_directional(raw) || run_length_ >= n_) last_emitted_ = raw;
   return last_emitted_;
}

std::vector<Status> apply_debounce(std::span<const Status> statuses, int n)
{
   Debouncer d(n);
   std::vector<Status> out;
   out.reserve(statuses.size());
   for(auto s : statuses) out.push_back(d.push(s));
   return out;
}

// ---------------------------------------------------------------- reporting

void ReportAccumulator::add(const Feedback& feedback)
{
   ++report_.frames_processed;
   bool usable    = false;
   bool all_match = true;
   for(const auto& pf : feedback.pairs) {
      auto& tally = report_.per_pair[pf.pair_id];
      switch(pf.status) {
      case Status::Match: ++tally.match_frames; break;
      case Status::NotVisible: ++tally.not_visible_frames; break;
      default: ++tally.correction_frames; break;
      }
      if(pf.status != Status::NotVisible) {
         usable = true;
         if(pf.status != Status::Match) all_match = false;
      }
   }
   if(usable) {
      ++report_.frames_usable;
      if(all_match) ++report_.full_match_frames;
   }
}

SessionReport aggregate_report(std::span<const Feedback> feedbacks)
{
   ReportAccumulator acc;
   for(const auto& f : feedbacks) acc.add(f);
   return acc.report();
}

// ------------------------------------------------------------------- session

Session::Session(ReferencePose reference, SessionConfig config)
    : reference_(std::move(reference))
    , config_(std::move(config))
{
   config_.validate();
   const auto& pairs   = config_.comparison.pairs;
   const auto& entries = reference_.profile.entries;
   const bool same     = entries.size() == pairs.size()
                     && std::ranges::all_of(pairs, [&](const JointPair& p) {
                           return reference_.profile.find(p.id) != nullptr;
                        });
   if(!same)
      throw Error(ErrorCode::PairSetMismatch,
                  "reference '" + reference_.name
                      + "' was extracted over a different pair set");
   debouncers_.assign(pairs.size(), Debouncer(config_.debounce_frames));
}

Feedback Session::push(const PoseFrame& frame)
{
   const auto& cmp = config_.comparison;
   auto feedback
       = compare_profiles(reference_.profile, extract_profile(frame, cmp), cmp);
   if(config_.debounce_frames > 1)
      for(std::size_t i = 0; i < feedback.pairs.size(); ++i)
         feedback.pairs[i].status = debouncers_[i].push(feedback.pairs[i].status);
   acc_.add(feedback);
   return feedback;
}

StreamResult process_stream(std::span<const PoseFrame> frames,
                            const ReferencePose& reference,
                            const SessionConfig& config)
{
   Session session(reference, config);
   StreamResult out;
   out.feedback.reserve(frames.size());
   for(const auto& f : frames) out.feedback.push_back(session.push(f));
   out.report = session.report();
   return out;
}

} // namespace fittutor
