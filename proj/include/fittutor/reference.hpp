#pragma once

#include "fittutor/compare.hpp"
#include "fittutor/skeleton.hpp"

#include <string>

namespace fittutor
{
// A stored trainer pose. `profile` is a cache of
// extract_profile(frame, config) and is always rebuilt from the frame.
struct ReferencePose
{
   std::string name;
   PoseFrame frame;
   ComparisonConfig config;
   SlopeProfile profile;

   bool operator==(const ReferencePose&) const = default;
};

ReferencePose make_reference(std::string name,
                             const PoseFrame& frame,
                             const ComparisonConfig& config);

// Same pose re-extracted under a different comparison config.
ReferencePose with_config(const ReferencePose& ref,
                          const ComparisonConfig& config);

} // namespace fittutor
