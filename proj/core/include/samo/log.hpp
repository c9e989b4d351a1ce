#pragma once

#include <functional>
#include <string_view>

namespace samo::log {

enum class Level { debug = 0, info = 1, warning = 2, error = 3, off = 4 };

using Sink = std::function<void(Level, std::string_view)>;

/// Replaces the process-wide sink. The default writes to std::clog.
void set_sink(Sink sink);
void set_level(Level level);
Level level();

void write(Level level, std::string_view message);

inline void debug(std::string_view m) { write(Level::debug, m); }
inline void info(std::string_view m) { write(Level::info, m); }
inline void warning(std::string_view m) { write(Level::warning, m); }
inline void error(std::string_view m) { write(Level::error, m); }

}  // namespace samo::log
