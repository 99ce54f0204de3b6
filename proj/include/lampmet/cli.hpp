#pragma once

namespace lampmet {

// Full command-line driver. Returns the process exit status: 0 on success,
// 1 on input errors (bad flags, unreadable or malformed files), 2 on numerical
// failures. Never calls std::exit.
int cli_main(int argc, const char* const* argv);

}  // namespace lampmet
