#include "mfp/picard.hpp"

namespace mfp {

std::string_view to_string(StopReason r) noexcept {
    switch (r) {
        case StopReason::Settled: return "settled";
        case StopReason::MaxIter: return "max-iter";
        case StopReason::GuardTripped: return "guard-tripped";
    }
    return "unknown";
}

std::string_view to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::MaxIterExceeded: return "MaxIterExceeded";
        case SolveStatus::DivergenceSuspected: return "DivergenceSuspected";
    }
    return "unknown";
}

std::string_view to_string(UniquenessVerdict v) noexcept {
    switch (v) {
        case UniquenessVerdict::Unique: return "unique";
        case UniquenessVerdict::NotUnique: return "not-unique";
        case UniquenessVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

}  // namespace mfp
