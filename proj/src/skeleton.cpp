#include "fittutor/skeleton.hpp"
#include "fittutor/error.hpp"

#include <cmath>
#include <string>

namespace fittutor
{
namespace
{
   void check_keypoint(const Keypoint& k)
   {
      if(!std::isfinite(k.x) || !std::isfinite(k.y))
         throw Error(ErrorCode::InvalidFrame,
                     "non-finite coordinate for " + std::string(str(k.part)));
      if(!(k.score >= 0.0 && k.score <= 1.0))
         throw Error(ErrorCode::OutOfRangeScore,
                     "score " + std::to_string(k.score) + " for "
                         + std::string(str(k.part)) + " is outside [0, 1]");
   }

   void check_dimensions(double width, double height)
   {
      if(!(std::isfinite(width) && width > 0.0 && std::isfinite(height)
           && height > 0.0))
         throw Error(ErrorCode::InvalidFrame,
                     "frame dimensions must be positive, got "
                         + std::to_string(width) + "x"
                         + std::to_string(height));
   }
} // namespace

PoseFrame::PoseFrame(std::int64_t timestamp_ms,
                     double width,
                     double height,
                     const Keypoints& keypoints)
    : timestamp_ms_(timestamp_ms)
    , width_(width)
    , height_(height)
    , keypoints_(keypoints)
{
   check_dimensions(width, height);
   for(std::size_t i = 0; i < k_n_body_parts; ++i) {
      if(index_of(keypoints_[i].part) != i)
         throw Error(ErrorCode::InvalidFrame,
                     "keypoint " + std::to_string(i) + " must be "
                         + std::string(str(k_all_body_parts[i])));
      check_keypoint(keypoints_[i]);
   }
}

PoseFrame PoseFrame::from_unordered(std::int64_t timestamp_ms,
                                    double width,
                                    double height,
                                    std::span<const Keypoint> keypoints)
{
   Keypoints ordered{};
   std::array<bool, k_n_body_parts> seen{};
   for(const auto& k : keypoints) {
      const auto i = index_of(k.part);
      if(seen[i])
         throw Error(ErrorCode::DuplicatePart,
                     "duplicate part " + std::string(str(k.part)));
      seen[i]    = true;
      ordered[i] = k;
   }
   for(auto p : k_all_body_parts)
      if(!seen[index_of(p)])
         throw Error(ErrorCode::MissingPart,
                     "missing part " + std::string(str(p)));
   return PoseFrame(timestamp_ms, width, height, ordered);
}

PoseFrame mirror_frame(const PoseFrame& frame)
{
   PoseFrame::Keypoints out{};
   for(const auto& k : frame.keypoints()) {
      const auto partner   = mirror_partner(k.part);
      out[index_of(partner)] = {partner, frame.width() - k.x, k.y, k.score};
   }
   return PoseFrame(frame.timestamp_ms(), frame.width(), frame.height(), out);
}

PoseFrame translate_frame(const PoseFrame& frame, double dx, double dy)
{
   auto kps = frame.keypoints();
   for(auto& k : kps) {
      k.x += dx;
      k.y += dy;
   }
   return PoseFrame(frame.timestamp_ms(), frame.width(), frame.height(), kps);
}

PoseFrame scale_frame(const PoseFrame& frame, double s, Point2 origin)
{
   auto kps = frame.keypoints();
   for(auto& k : kps) {
      k.x = origin.x + s * (k.x - origin.x);
      k.y = origin.y + s * (k.y - origin.y);
   }
   return PoseFrame(frame.timestamp_ms(),
                    frame.width() * s,
                    frame.height() * s,
                    kps);
}

// ------------------------------------------------------------------ JointPair

std::string_view str(LimbClass c) noexcept
{
   return c == LimbClass::Arm ? "arm" : "leg";
}

std::string_view str(PairSet s) noexcept
{
   return s == PairSet::Table2 ? "table2" : "extended";
}

std::optional<PairSet> to_pair_set(std::string_view s) noexcept
{
   if(s == "table2") return PairSet::Table2;
   if(s == "extended") return PairSet::Extended;
   return std::nullopt;
}

std::vector<JointPair> make_pairs(PairSet set)
{
   using B = BodyPart;
   std::vector<JointPair> pairs = {
       {"leftArm", B::LeftShoulder, B::LeftElbow, LimbClass::Arm},
       {"rightArm", B::RightShoulder, B::RightElbow, LimbClass::Arm},
       {"leftLeg", B::LeftHip, B::LeftAnkle, LimbClass::Leg},
       {"rightLeg", B::RightHip, B::RightAnkle, LimbClass::Leg},
   };
   if(set == PairSet::Extended) {
      pairs.push_back({"leftForearm", B::LeftElbow, B::LeftWrist, LimbClass::Arm});
      pairs.push_back(
          {"rightForearm", B::RightElbow, B::RightWrist, LimbClass::Arm});
   }
   return pairs;
}

} // namespace fittutor
