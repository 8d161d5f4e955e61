#include "fittutor/body_part.hpp"
#include "fittutor/error.hpp"

namespace fittutor
{
namespace
{
   constexpr std::array<std::string_view, k_n_body_parts> k_names = {
       "nose",          "leftEye",       "rightEye",   "leftEar",
       "rightEar",      "leftShoulder",  "rightShoulder", "leftElbow",
       "rightElbow",    "leftWrist",     "rightWrist", "leftHip",
       "rightHip",      "leftKnee",      "rightKnee",  "leftAnkle",
       "rightAnkle",
   };
} // namespace

std::string_view str(BodyPart p) noexcept { return k_names[index_of(p)]; }

std::optional<BodyPart> to_body_part(std::string_view name) noexcept
{
   for(auto p : k_all_body_parts)
      if(k_names[index_of(p)] == name) return p;
   return std::nullopt;
}

BodyPart mirror_partner(BodyPart p) noexcept
{
   // Left/right parts alternate from LeftEye onwards.
   if(p == BodyPart::Nose) return p;
   const auto i = index_of(p);
   return static_cast<BodyPart>(i % 2 == 1 ? i + 1 : i - 1);
}

std::string_view str(ErrorCode code) noexcept
{
   switch(code) {
   case ErrorCode::MalformedDocument: return "MalformedDocument";
   case ErrorCode::MissingPart: return "MissingPart";
   case ErrorCode::DuplicatePart: return "DuplicatePart";
   case ErrorCode::OutOfRangeScore: return "OutOfRangeScore";
   case ErrorCode::UnknownPartName: return "UnknownPartName";
   case ErrorCode::InvalidFrame: return "InvalidFrame";
   case ErrorCode::InvalidConfig: return "InvalidConfig";
   case ErrorCode::DegeneratePair: return "DegeneratePair";
   case ErrorCode::PairSetMismatch: return "PairSetMismatch";
   }
   return "Unknown";
}

} // namespace fittutor
