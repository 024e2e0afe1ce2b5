#pragma once

#include <mutex>
#include <ostream>
#include <string_view>

#include <nlohmann/json.hpp>

namespace veritas::app {

enum class LogLevel { Debug, Info, Warn, Error, Off };

// Structured log: one JSON object per line,
// {"ts": ..., "level": ..., "event": ..., <fields>}.
class Logger {
 public:
  explicit Logger(std::ostream& sink, LogLevel min_level = LogLevel::Info)
      : sink_(sink), min_level_(min_level) {}

  void log(LogLevel level, std::string_view event,
           const nlohmann::ordered_json& fields = nlohmann::ordered_json::object());

  void debug(std::string_view event, const nlohmann::ordered_json& f = nlohmann::ordered_json::object()) {
    log(LogLevel::Debug, event, f);
  }
  void info(std::string_view event, const nlohmann::ordered_json& f = nlohmann::ordered_json::object()) {
    log(LogLevel::Info, event, f);
  }
  void warn(std::string_view event, const nlohmann::ordered_json& f = nlohmann::ordered_json::object()) {
    log(LogLevel::Warn, event, f);
  }
  void error(std::string_view event, const nlohmann::ordered_json& f = nlohmann::ordered_json::object()) {
    log(LogLevel::Error, event, f);
  }

 private:
  std::ostream& sink_;
  LogLevel min_level_;
  std::mutex mutex_;
};

LogLevel parse_log_level(std::string_view name);

}  // namespace veritas::app
