/// @file report.hpp
/// @brief Outcome of one identity verification.
#pragma once

#include <cstdint>
#include <string>

namespace qrs {

struct Report {
    std::string identity;
    int size = 0;                 // n or 2n
    std::string regime;           // "generic" | "q-inverse" | "q-negative" | "numeric"
    bool holds = false;
    long long residual_terms = 0; // holds <=> residual_terms == 0
    long long elapsed_ms = 0;
};

std::string report_to_json(const Report& r);
std::string report_to_text(const Report& r);

} // namespace qrs
