#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace horosark {

// Exit codes: 0 success, 2 input validation failure, 3 genericity failure,
// 4 internal assertion failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace horosark
