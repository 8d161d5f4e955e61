#include "fittutor/reference.hpp"

namespace fittutor
{
ReferencePose make_reference(std::string name,
                             const PoseFrame& frame,
                             const ComparisonConfig& config)
{
   config.validate();
   return ReferencePose{std::move(name),
                        frame,
                        config,
                        extract_profile(frame, config)};
}

ReferencePose with_config(const ReferencePose& ref,
                          const ComparisonConfig& config)
{
   return make_reference(ref.name, ref.frame, config);
}

} // namespace fittutor
