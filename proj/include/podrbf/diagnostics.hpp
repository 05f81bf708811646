#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace podrbf {

enum class WarningKind { IllConditioned, Extrapolation, OutsideBox, MaxEvalsExceeded };

std::string_view to_string(WarningKind kind);

using WarningHandler = std::function<void(WarningKind, std::string_view)>;

// Non-fatal conditions (ill-conditioned Gram matrix, prediction outside the
// training box, ...) are routed here. The default handler writes to stderr.
// Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(WarningKind kind, std::string_view message);

}  // namespace podrbf
