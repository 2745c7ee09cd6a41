#ifndef AUTOSTACK_TOOLS_CLI_HPP_
#define AUTOSTACK_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace autostack::cli {

  inline constexpr int kOk           = 0;
  inline constexpr int kFailed       = 1;  // verification failure or runtime error
  inline constexpr int kUsageOrParse = 2;

  //! args excludes the program name.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace autostack::cli

#endif  // AUTOSTACK_TOOLS_CLI_HPP_
