#include "qrs/report.hpp"

#include <sstream>

#include "json.hpp"

namespace qrs {

std::string report_to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["size"] = r.size;
    j["regime"] = r.regime;
    j["holds"] = r.holds;
    j["residual_terms"] = r.residual_terms;
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump();
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << r.identity << " size=" << r.size << " regime=" << r.regime
       << " holds=" << (r.holds ? "true" : "false")
       << " residual_terms=" << r.residual_terms << " elapsed_ms=" << r.elapsed_ms;
    return os.str();
}

} // namespace qrs
