#pragma once

#include <string>

namespace groupdyn {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

// Level comes from the GROUPDYN_LOG environment variable
// (debug|info|warn|error); default is info. Output goes to stderr so
// stage artifacts on stdout stay clean.
LogLevel log_level();

void log_msg(LogLevel level, const std::string& msg);

inline void log_debug(const std::string& m) { log_msg(LogLevel::debug, m); }
inline void log_info(const std::string& m) { log_msg(LogLevel::info, m); }
inline void log_warn(const std::string& m) { log_msg(LogLevel::warn, m); }
inline void log_error(const std::string& m) { log_msg(LogLevel::error, m); }

}  // namespace groupdyn
