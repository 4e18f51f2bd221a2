#include "groupdyn/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace groupdyn {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("GROUPDYN_LOG");
    if (!env) return LogLevel::info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    if (std::strcmp(env, "warn") == 0) return LogLevel::warn;
    if (std::strcmp(env, "error") == 0) return LogLevel::error;
    return LogLevel::info;
  }();
  return level;
}

void log_msg(LogLevel level, const std::string& msg) {
  if (level < log_level()) return;
  static const char* names[] = {"debug", "info", "warn", "error"};
  std::fprintf(stderr, "[%s] %s\n", names[int(level)], msg.c_str());
}

}  // namespace groupdyn
