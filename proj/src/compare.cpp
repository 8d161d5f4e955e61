#include "fittutor/compare.hpp"
#include "fittutor/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace fittutor
{
// ------------------------------------------------------------- compute_slope

LimbOrientation compute_slope(Point2 p1, Point2 p2, double limb_length)
{
   if(p1 == p2)
      throw Error(ErrorCode::DegeneratePair,
                  "cannot take the slope of a zero-length limb");
   const double dx = p2.x - p1.x;
   const double dy = p2.y - p1.y;
   if(std::fabs(dx) < k_vertical_epsilon * limb_length)
      return LimbOrientation::vertical();
   return LimbOrientation::finite(dy / dx);
}

LimbOrientation compute_slope(Point2 p1, Point2 p2)
{
   return compute_slope(p1, p2, std::hypot(p2.x - p1.x, p2.y - p1.y));
}

// ----------------------------------------------------------- ComparisonConfig

std::string_view str(CompareMode m) noexcept
{
   return m == CompareMode::Slope ? "slope" : "angle";
}

std::optional<CompareMode> to_compare_mode(std::string_view s) noexcept
{
   if(s == "slope") return CompareMode::Slope;
   if(s == "angle") return CompareMode::Angle;
   return std::nullopt;
}

ComparisonConfig ComparisonConfig::with_pair_set(PairSet set)
{
   ComparisonConfig c;
   c.pair_set = set;
   c.pairs    = make_pairs(set);
   return c;
}

void ComparisonConfig::validate() const
{
   auto fail = [](const std::string& msg) {
      throw Error(ErrorCode::InvalidConfig, msg);
   };
   if(!(std::isfinite(tolerance) && tolerance > 0.0))
      fail("tolerance must be > 0");
   if(!(min_score >= 0.0 && min_score <= 1.0))
      fail("minScore must lie in [0, 1]");
   if(!(std::isfinite(angle_tolerance_deg) && angle_tolerance_deg > 0.0))
      fail("angleToleranceDeg must be > 0");
   if(pairs.empty()) fail("at least one joint pair is required");
   std::set<std::string_view> ids;
   for(const auto& p : pairs) {
      if(p.id.empty()) fail("joint pair id must not be empty");
      if(p.proximal == p.distal)
         fail("joint pair '" + p.id + "' joins a part to itself");
      if(!ids.insert(p.id).second)
         fail("duplicate joint pair id '" + p.id + "'");
   }
}

const JointPair* ComparisonConfig::find_pair(std::string_view id) const noexcept
{
   auto ii = std::ranges::find(pairs, id, &JointPair::id);
   return ii == pairs.end() ? nullptr : &*ii;
}

// --------------------------------------------------------------- SlopeProfile

const ProfileEntry* SlopeProfile::find(std::string_view pair_id) const noexcept
{
   auto ii = std::ranges::find(entries, pair_id, &ProfileEntry::pair_id);
   return ii == entries.end() ? nullptr : &*ii;
}

SlopeProfile extract_profile(const PoseFrame& frame,
                             const ComparisonConfig& config)
{
   SlopeProfile profile;
   profile.timestamp_ms = frame.timestamp_ms();
   profile.entries.reserve(config.pairs.size());

   for(const auto& pair : config.pairs) {
      const auto& a = frame[pair.proximal];
      const auto& b = frame[pair.distal];
      ProfileEntry e;
      e.pair_id       = pair.id;
      const double dx = b.x - a.x;
      const double dy = b.y - a.y;
      const double len = std::hypot(dx, dy);
      if(len > 0.0) {
         e.orientation = compute_slope(a.position(), b.position(), len);
         e.norm_dx     = dx / len;
         e.norm_dy     = dy / len;
         e.valid = a.score >= config.min_score && b.score >= config.min_score;
      }
      profile.entries.push_back(std::move(e));
   }
   return profile;
}

// ------------------------------------------------------------------- Feedback

std::string_view str(Status s) noexcept
{
   switch(s) {
   case Status::Match: return "Match";
   case Status::MoveUp: return "MoveUp";
   case Status::MoveDown: return "MoveDown";
   case Status::MoveLeft: return "MoveLeft";
   case Status::MoveRight: return "MoveRight";
   case Status::NotVisible: return "NotVisible";
   case Status::Indeterminate: return "Indeterminate";
   }
   return "Indeterminate";
}

std::optional<Status> to_status(std::string_view s) noexcept
{
   for(auto st : {Status::Match,
                  Status::MoveUp,
                  Status::MoveDown,
                  Status::MoveLeft,
                  Status::MoveRight,
                  Status::NotVisible,
                  Status::Indeterminate})
      if(str(st) == s) return st;
   return std::nullopt;
}

const PairFeedback* Feedback::find(std::string_view pair_id) const noexcept
{
   auto ii = std::ranges::find(pairs, pair_id, &PairFeedback::pair_id);
   return ii == pairs.end() ? nullptr : &*ii;
}

Status make_suggestion(const JointPair& pair,
                       const ProfileEntry& ref,
                       const ProfileEntry& user) noexcept
{
   // Image +y points down, so a larger norm_dy means the distal joint hangs
   // lower than in the reference.
   if(pair.limb_class == LimbClass::Arm) {
      if(user.norm_dy > ref.norm_dy) return Status::MoveUp;
      if(user.norm_dy < ref.norm_dy) return Status::MoveDown;
   } else {
      if(user.norm_dx > ref.norm_dx) return Status::MoveRight;
      if(user.norm_dx < ref.norm_dx) return Status::MoveLeft;
   }
   return Status::Indeterminate;
}

double line_angle_deg(double norm_dy, double norm_dx) noexcept
{
   double deg = std::atan2(norm_dy, norm_dx) * 180.0 / std::numbers::pi;
   if(deg > 90.0) deg -= 180.0;
   if(deg <= -90.0) deg += 180.0;
   return deg;
}

double wrap_line_delta_deg(double delta_deg) noexcept
{
   double d = std::fmod(delta_deg + 90.0, 180.0);
   if(d < 0.0) d += 180.0;
   return d - 90.0;
}

namespace
{
   void check_pair_sets(const SlopeProfile& ref,
                        const SlopeProfile& user,
                        const ComparisonConfig& config)
   {
      const auto n = config.pairs.size();
      bool ok      = ref.entries.size() == n && user.entries.size() == n;
      for(std::size_t i = 0; ok && i < n; ++i)
         ok = ref.find(config.pairs[i].id) != nullptr
              && user.find(config.pairs[i].id) != nullptr;
      if(!ok)
         throw Error(ErrorCode::PairSetMismatch,
                     "reference, user profile and config name different "
                     "joint pairs");
   }

   template<typename MatchTest>
   Feedback compare_with(const SlopeProfile& ref,
                         const SlopeProfile& user,
                         const ComparisonConfig& config,
                         MatchTest&& is_match)
   {
      check_pair_sets(ref, user, config);

      Feedback out;
      out.timestamp_ms = user.timestamp_ms;
      out.pairs.reserve(config.pairs.size());
      for(const auto& pair : config.pairs) {
         const auto& r = *ref.find(pair.id);
         const auto& u = *user.find(pair.id);
         PairFeedback fb{pair.id, Status::NotVisible, std::nullopt};
         if(r.valid && u.valid) {
            const auto& ro = *r.orientation;
            const auto& uo = *u.orientation;
            if(ro.is_finite() && uo.is_finite())
               fb.deviation = std::fabs(uo.slope() - ro.slope());
            fb.status = is_match(r, u, fb.deviation)
                            ? Status::Match
                            : make_suggestion(pair, r, u);
         }
         out.pairs.push_back(std::move(fb));
      }
      return out;
   }
} // namespace

Feedback compare_profiles(const SlopeProfile& ref,
                          const SlopeProfile& user,
                          const ComparisonConfig& config)
{
   if(config.mode == CompareMode::Angle)
      return compare_angle_mode(ref, user, config);

   const double tol = config.tolerance;
   return compare_with(
       ref,
       user,
       config,
       [tol](const ProfileEntry& r,
             const ProfileEntry& u,
             const std::optional<double>& deviation) {
          if(deviation) return *deviation <= tol;
          return r.orientation->is_vertical() && u.orientation->is_vertical();
       });
}

Feedback compare_angle_mode(const SlopeProfile& ref,
                            const SlopeProfile& user,
                            const ComparisonConfig& config)
{
   const double tol = config.angle_tolerance_deg;
   return compare_with(ref,
                       user,
                       config,
                       [tol](const ProfileEntry& r,
                             const ProfileEntry& u,
                             const std::optional<double>&) {
                          const double delta = wrap_line_delta_deg(
                              line_angle_deg(u.norm_dy, u.norm_dx)
                              - line_angle_deg(r.norm_dy, r.norm_dx));
                          return std::fabs(delta) <= tol;
                       });
}

// ------------------------------------------------------------- validate_frame

ValidityReport validate_frame(const PoseFrame& frame,
                              const ComparisonConfig& config) noexcept
{
   ValidityReport report;
   const auto profile = extract_profile(frame, config);
   report.n_pairs     = profile.entries.size();
   for(const auto& e : profile.entries) {
      if(e.valid)
         report.usable = true;
      else
         report.invalid_pairs.push_back(e.pair_id);
   }
   return report;
}

} // namespace fittutor
