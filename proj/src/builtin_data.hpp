#pragma once

#include <string_view>

namespace billiard {

std::string_view builtin_centers_text();
std::string_view builtin_semiaxes_text();

}  // namespace billiard
