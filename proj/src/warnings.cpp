#include "qframe/types.hpp"

#include <iostream>
#include <mutex>

namespace qframe {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h;
  return h;
}

thread_local WarningCapture* active_capture = nullptr;

}  // namespace

WarningCapture::WarningCapture() : outer_(active_capture) { active_capture = this; }
WarningCapture::~WarningCapture() { active_capture = outer_; }

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  auto previous = std::move(handler_slot());
  handler_slot() = std::move(handler);
  return previous;
}

void warn(std::string_view message) {
  if (active_capture) active_capture->messages_.emplace_back(message);
  std::lock_guard lock(handler_mutex());
  if (handler_slot()) {
    handler_slot()(message);
  } else {
    std::clog << "qframe warning: " << message << '\n';
  }
}

}  // namespace qframe
