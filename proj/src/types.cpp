#include "tokenlaws/types.hpp"

namespace tokenlaws {

const char* metric_name(Metric m) {
    switch (m) {
        case Metric::WER: return "WER";
        case Metric::CER: return "CER";
        case Metric::UTMOS: return "UTMOS";
    }
    return "?";
}

Metric parse_metric(const std::string& name) {
    if (name == "WER") return Metric::WER;
    if (name == "CER") return Metric::CER;
    if (name == "UTMOS") return Metric::UTMOS;
    throw ValidationError("unknown metric name: '" + name + "' (expected WER, CER or UTMOS)");
}

void validate_metric_value(Metric m, double value) {
    switch (m) {
        case Metric::WER:
        case Metric::CER:
            if (!(value >= 0.0))
                throw ValidationError(std::string(metric_name(m)) + " value out of range: " +
                                      std::to_string(value) + " (must be >= 0)");
            break;
        case Metric::UTMOS:
            if (!(value >= 1.0 && value <= 5.0))
                throw ValidationError("UTMOS value out of range: " + std::to_string(value) +
                                      " (must be in [1, 5])");
            break;
    }
}

}  // namespace tokenlaws
