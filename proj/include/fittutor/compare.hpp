#pragma once

#include "fittutor/skeleton.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fittutor
{
// Relative threshold below which |dx| counts as zero: a limb is Vertical when
// |dx| < k_vertical_epsilon * limb_length.
inline constexpr double k_vertical_epsilon = 1e-6;

// ------------------------------------------------------------ LimbOrientation
//
// Either a finite slope dy/dx (image coords) or the Vertical tag.
class LimbOrientation
{
 public:
   static LimbOrientation finite(double slope) noexcept
   {
      return LimbOrientation{slope};
   }
   static LimbOrientation vertical() noexcept { return LimbOrientation{}; }

   bool is_vertical() const noexcept { return !slope_.has_value(); }
   bool is_finite() const noexcept { return slope_.has_value(); }

   // Precondition: is_finite().
   double slope() const noexcept { return *slope_; }

   bool operator==(const LimbOrientation&) const = default;

 private:
   LimbOrientation() = default;
   explicit LimbOrientation(double s)
       : slope_(s)
   {}

   std::optional<double> slope_;
};

// Throws Error{DegeneratePair} when p1 == p2. Symmetric in (p1, p2).
LimbOrientation
compute_slope(Point2 p1, Point2 p2, double limb_length);

// Convenience overload that measures the limb itself.
LimbOrientation compute_slope(Point2 p1, Point2 p2);

// ----------------------------------------------------------- ComparisonConfig

enum class CompareMode : std::uint8_t { Slope, Angle };

std::string_view str(CompareMode) noexcept;
std::optional<CompareMode> to_compare_mode(std::string_view) noexcept;

struct ComparisonConfig
{
   double tolerance           = 0.5; // inclusive, in slope units
   double min_score           = 0.5;
   PairSet pair_set           = PairSet::Table2;
   std::vector<JointPair> pairs = make_pairs(PairSet::Table2);
   CompareMode mode           = CompareMode::Slope;
   double angle_tolerance_deg = 15.0;

   static ComparisonConfig with_pair_set(PairSet);

   // Throws Error{InvalidConfig}.
   void validate() const;

   const JointPair* find_pair(std::string_view id) const noexcept;

   bool operator==(const ComparisonConfig&) const = default;
};

// --------------------------------------------------------------- SlopeProfile

struct ProfileEntry
{
   std::string pair_id;
   // Absent only for zero-length limbs.
   std::optional<LimbOrientation> orientation;
   bool valid     = false;
   double norm_dy = 0.0; // dy / limb_length, distal minus proximal
   double norm_dx = 0.0; // dx / limb_length

   bool operator==(const ProfileEntry&) const = default;
};

struct SlopeProfile
{
   std::int64_t timestamp_ms = 0;
   std::vector<ProfileEntry> entries; // in config pair order

   const ProfileEntry* find(std::string_view pair_id) const noexcept;

   bool operator==(const SlopeProfile&) const = default;
};

SlopeProfile extract_profile(const PoseFrame& frame,
                             const ComparisonConfig& config);

// ------------------------------------------------------------------- Feedback

enum class Status : std::uint8_t {
   Match,
   MoveUp,
   MoveDown,
   MoveLeft,
   MoveRight,
   NotVisible,
   Indeterminate,
};

std::string_view str(Status) noexcept;
std::optional<Status> to_status(std::string_view) noexcept;

constexpr bool is_directional(Status s) noexcept
{
   return s == Status::MoveUp || s == Status::MoveDown
          || s == Status::MoveLeft || s == Status::MoveRight;
}

struct PairFeedback
{
   std::string pair_id;
   Status status = Status::NotVisible;
   // |user slope - ref slope|; present iff both sides valid and finite.
   std::optional<double> deviation;

   bool operator==(const PairFeedback&) const = default;
};

struct Feedback
{
   std::int64_t timestamp_ms = 0; // taken from the user profile
   std::vector<PairFeedback> pairs;

   const PairFeedback* find(std::string_view pair_id) const noexcept;

   bool operator==(const Feedback&) const = default;
};

/// Compares a user profile against a reference profile, pair by pair, in
/// config pair order. Dispatches to compare_angle_mode when config.mode is
/// Angle. A pair is NotVisible when either side is invalid; otherwise it
/// matches when both are Vertical or when the slopes differ by at most
/// config.tolerance (inclusive). Mismatches get a direction from
/// make_suggestion.
///
/// Throws Error{PairSetMismatch} unless `ref`, `user` and `config` name the
/// same set of pair ids.
Feedback compare_profiles(const SlopeProfile& ref,
                          const SlopeProfile& user,
                          const ComparisonConfig& config);

/// Same contract as compare_profiles, but the match test is on line
/// orientation: |wrap90(theta_user - theta_ref)| <= angle_tolerance_deg.
/// Runs regardless of config.mode.
Feedback compare_angle_mode(const SlopeProfile& ref,
                            const SlopeProfile& user,
                            const ComparisonConfig& config);

// Direction for a valid pair that failed its match test. Arms: MoveUp when
// the user's distal joint sits lower (larger norm_dy) than the reference,
// else MoveDown. Legs: MoveRight when user norm_dx > ref norm_dx, else
// MoveLeft. Exactly equal components give Indeterminate.
Status make_suggestion(const JointPair& pair,
                       const ProfileEntry& ref,
                       const ProfileEntry& user) noexcept;

// Line orientation in degrees, folded into (-90, 90].
double line_angle_deg(double norm_dy, double norm_dx) noexcept;

// Wraps an angle difference into [-90, 90].
double wrap_line_delta_deg(double delta_deg) noexcept;

// ------------------------------------------------------------- validate_frame

struct ValidityReport
{
   bool usable = false; // at least one configured pair valid
   std::vector<std::string> invalid_pairs;
   std::size_t n_pairs = 0;

   bool operator==(const ValidityReport&) const = default;
};

ValidityReport validate_frame(const PoseFrame& frame,
                              const ComparisonConfig& config) noexcept;

} // namespace fittutor
