#include "veritas_app/logger.hpp"

#include <chrono>
#include <ctime>

#include "veritas/error.hpp"
#include "veritas/jsonl.hpp"

namespace veritas::app {
namespace {

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warn: return "warn";
    case LogLevel::Error: return "error";
    case LogLevel::Off: break;
  }
  return "off";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::system_clock::to_time_t(now);
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  const auto n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%.*s.%03dZ", static_cast<int>(n), buf, static_cast<int>(millis));
  return out;
}

}  // namespace

void Logger::log(LogLevel level, std::string_view event, const nlohmann::ordered_json& fields) {
  if (level < min_level_ || level == LogLevel::Off) return;
  nlohmann::ordered_json line;
  line["ts"] = utc_timestamp();
  line["level"] = level_name(level);
  line["event"] = event;
  for (const auto& [key, value] : fields.items()) line[key] = value;
  const auto text = dump_line(line);
  std::lock_guard lock(mutex_);
  sink_ << text << '\n';
  sink_.flush();
}

LogLevel parse_log_level(std::string_view name) {
  if (name == "debug") return LogLevel::Debug;
  if (name == "info") return LogLevel::Info;
  if (name == "warn") return LogLevel::Warn;
  if (name == "error") return LogLevel::Error;
  if (name == "off") return LogLevel::Off;
  throw ValidationError("unknown log level '" + std::string(name) + "'");
}

}  // namespace veritas::app
