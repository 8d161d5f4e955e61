#pragma once

#include "fittutor/body_part.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fittutor
{
// Image coordinates: origin top-left, +x right, +y down, pixels.
struct Point2
{
   double x = 0.0;
   double y = 0.0;

   bool operator==(const Point2&) const = default;
};

struct Keypoint
{
   BodyPart part = BodyPart::Nose;
   double x      = 0.0;
   double y      = 0.0;
   double score  = 0.0; // detector confidence in [0, 1]

   Point2 position() const noexcept { return {x, y}; }

   bool operator==(const Keypoint&) const = default;
};

// One detected person in one camera frame. Always holds all 17 parts, stored
// in BodyPart order. Keypoints outside the image rectangle are legal; the
// detector extrapolates occluded joints and confidence decides validity.
class PoseFrame
{
 public:
   using Keypoints = std::array<Keypoint, k_n_body_parts>;

   PoseFrame() = delete;

   // Throws Error{InvalidFrame | OutOfRangeScore} when `keypoints[i].part`
   // is not the i-th BodyPart, a coordinate is non-finite, a score is outside
   // [0,1], or the dimensions are not positive.
   PoseFrame(std::int64_t timestamp_ms,
             double width,
             double height,
             const Keypoints& keypoints);

   // Accepts keypoints in any order. Throws MissingPart / DuplicatePart in
   // addition to the checks above.
   static PoseFrame from_unordered(std::int64_t timestamp_ms,
                                   double width,
                                   double height,
                                   std::span<const Keypoint> keypoints);

   std::int64_t timestamp_ms() const noexcept { return timestamp_ms_; }
   double width() const noexcept { return width_; }
   double height() const noexcept { return height_; }
   const Keypoints& keypoints() const noexcept { return keypoints_; }

   const Keypoint& operator[](BodyPart p) const noexcept
   {
      return keypoints_[index_of(p)];
   }

   bool operator==(const PoseFrame&) const = default;

 private:
   std::int64_t timestamp_ms_ = 0;
   double width_              = 0.0;
   double height_             = 0.0;
   Keypoints keypoints_{};
};

// x' = width - x, left/right parts swapped. An involution.
PoseFrame mirror_frame(const PoseFrame& frame);

PoseFrame translate_frame(const PoseFrame& frame, double dx, double dy);

// Scales coordinates by `s` about `origin`. Dimensions are scaled too.
PoseFrame scale_frame(const PoseFrame& frame, double s, Point2 origin);

// ------------------------------------------------------------------ JointPair

enum class LimbClass : std::uint8_t { Arm, Leg };

std::string_view str(LimbClass) noexcept;

// A limb whose orientation is compared. Arms are corrected vertically
// (up/down), legs horizontally (left/right).
struct JointPair
{
   std::string id;
   BodyPart proximal = BodyPart::LeftShoulder;
   BodyPart distal   = BodyPart::LeftElbow;
   LimbClass limb_class = LimbClass::Arm;

   bool operator==(const JointPair&) const = default;
};

enum class PairSet : std::uint8_t { Table2, Extended };

std::string_view str(PairSet) noexcept;
std::optional<PairSet> to_pair_set(std::string_view) noexcept;

// Table2: leftArm, rightArm, leftLeg, rightLeg (shoulder-elbow, hip-ankle).
// Extended: Table2 plus leftForearm, rightForearm (elbow-wrist).
std::vector<JointPair> make_pairs(PairSet);

} // namespace fittutor
