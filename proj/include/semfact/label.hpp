#pragma once

#include <optional>
#include <string_view>

namespace semfact {

// Verdict labels with the fixed index mapping 1=NEI, 2=SUPPORTED, 3=REFUTED.
enum class VerdictLabel : int { NEI = 1, SUPPORTED = 2, REFUTED = 3 };

constexpr int verdict_index(VerdictLabel v) { return static_cast<int>(v); }

// Throws Error for an index outside 1..3.
VerdictLabel verdict_from_index(int index);

std::string_view to_string(VerdictLabel v);
std::optional<VerdictLabel> verdict_from_string(std::string_view s);

}  // namespace semfact
