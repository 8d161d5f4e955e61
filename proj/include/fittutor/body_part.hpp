#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fittutor
{
// The 17-part skeleton emitted by PoseNet-style detectors. Order matters: it
// is the order keypoints are stored in a PoseFrame and written to documents.
enum class BodyPart : std::uint8_t {
   Nose = 0,
   LeftEye,
   RightEye,
   LeftEar,
   RightEar,
   LeftShoulder,
   RightShoulder,
   LeftElbow,
   RightElbow,
   LeftWrist,
   RightWrist,
   LeftHip,
   RightHip,
   LeftKnee,
   RightKnee,
   LeftAnkle,
   RightAnkle,
};

inline constexpr std::size_t k_n_body_parts = 17;

inline constexpr std::array<BodyPart, k_n_body_parts> k_all_body_parts = {
    BodyPart::Nose,          BodyPart::LeftEye,       BodyPart::RightEye,
    BodyPart::LeftEar,       BodyPart::RightEar,      BodyPart::LeftShoulder,
    BodyPart::RightShoulder, BodyPart::LeftElbow,     BodyPart::RightElbow,
    BodyPart::LeftWrist,     BodyPart::RightWrist,    BodyPart::LeftHip,
    BodyPart::RightHip,      BodyPart::LeftKnee,      BodyPart::RightKnee,
    BodyPart::LeftAnkle,     BodyPart::RightAnkle,
};

constexpr std::size_t index_of(BodyPart p) noexcept
{
   return static_cast<std::size_t>(p);
}

// Detector name, e.g. "leftShoulder".
std::string_view str(BodyPart) noexcept;

// Exact, case-sensitive lookup; "left_shoulder" is not "leftShoulder".
std::optional<BodyPart> to_body_part(std::string_view name) noexcept;

// left* <-> right*; the nose is its own partner.
BodyPart mirror_partner(BodyPart) noexcept;

} // namespace fittutor
