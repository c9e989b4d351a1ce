#include "samo/log.hpp"

#include <iostream>
#include <mutex>

namespace samo::log {
namespace {

std::mutex& mutex() {
  static std::mutex m;
  return m;
}

Level& current_level() {
  static Level l = Level::warning;
  return l;
}

Sink& current_sink() {
  static Sink s = [](Level lvl, std::string_view msg) {
    static constexpr const char* names[] = {"debug", "info", "warning", "error", "off"};
    std::clog << "[samo " << names[static_cast<int>(lvl)] << "] " << msg << '\n';
  };
  return s;
}

}  // namespace

void set_sink(Sink sink) {
  std::lock_guard lock(mutex());
  current_sink() = std::move(sink);
}

void set_level(Level level) {
  std::lock_guard lock(mutex());
  current_level() = level;
}

Level level() {
  std::lock_guard lock(mutex());
  return current_level();
}

void write(Level lvl, std::string_view message) {
  std::lock_guard lock(mutex());
  if (lvl < current_level() || !current_sink()) return;
  current_sink()(lvl, message);
}

}  // namespace samo::log
