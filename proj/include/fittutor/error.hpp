#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fittutor
{
enum class ErrorCode {
   MalformedDocument,
   MissingPart,
   DuplicatePart,
   OutOfRangeScore,
   UnknownPartName,
   InvalidFrame,
   InvalidConfig,
   DegeneratePair,
   PairSetMismatch,
};

std::string_view str(ErrorCode) noexcept;

/// Every recoverable failure raised by the engine carries one of the codes
/// above so that callers (CLI, server) can map it to an exit status or a
/// wire error without parsing messages.
class Error : public std::runtime_error
{
 public:
   Error(ErrorCode code, const std::string& message)
       : std::runtime_error(message)
       , code_(code)
   {}

   ErrorCode code() const noexcept { return code_; }

 private:
   ErrorCode code_;
};

} // namespace fittutor
