#pragma once

namespace pwhs::cli {

// Exit codes: 0 success, 1 domain/validation error, 2 numerical-certification
// failure, 64 usage.
int run(int argc, const char* const* argv);

}  // namespace pwhs::cli
