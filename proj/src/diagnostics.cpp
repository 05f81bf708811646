#include "podrbf/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace podrbf {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h = [](WarningKind kind, std::string_view msg) {
    std::cerr << "warning [" << to_string(kind) << "]: " << msg << '\n';
  };
  return h;
}

}  // namespace

std::string_view to_string(WarningKind kind) {
  switch (kind) {
    case WarningKind::IllConditioned: return "IllConditioned";
    case WarningKind::Extrapolation: return "Extrapolation";
    case WarningKind::OutsideBox: return "OutsideBox";
    case WarningKind::MaxEvalsExceeded: return "MaxEvalsExceeded";
  }
  return "Unknown";
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  auto previous = std::move(handler_slot());
  handler_slot() = std::move(handler);
  return previous;
}

void warn(WarningKind kind, std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler_slot()) handler_slot()(kind, message);
}

}  // namespace podrbf
