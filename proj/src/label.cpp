#include "semfact/label.hpp"

#include "semfact/errors.hpp"

namespace semfact {

VerdictLabel verdict_from_index(int index) {
    switch (index) {
        case 1: return VerdictLabel::NEI;
        case 2: return VerdictLabel::SUPPORTED;
        case 3: return VerdictLabel::REFUTED;
        default: break;
    }
    throw Error("verdict index must be 1, 2, or 3, got " + std::to_string(index));
}

std::string_view to_string(VerdictLabel v) {
    switch (v) {
        case VerdictLabel::NEI: return "NEI";
        case VerdictLabel::SUPPORTED: return "SUPPORTED";
        case VerdictLabel::REFUTED: return "REFUTED";
    }
    return "NEI";
}

std::optional<VerdictLabel> verdict_from_string(std::string_view s) {
    if (s == "NEI") return VerdictLabel::NEI;
    if (s == "SUPPORTED") return VerdictLabel::SUPPORTED;
    if (s == "REFUTED") return VerdictLabel::REFUTED;
    return std::nullopt;
}

}  // namespace semfact
