#include "drham/report.hpp"

#include "json.hpp"

#include <sstream>

namespace drham {

void Report::add(std::string idx, bool zero, std::string residual) {
    pairs.push_back({std::move(idx), zero, zero ? std::string() : std::move(residual)});
}

bool Report::passed() const {
    return applicable && failures() == 0;
}

size_t Report::failures() const {
    size_t n = 0;
    for (auto& p : pairs)
        if (!p.residual_zero) ++n;
    return n;
}

std::string Report::to_json(int indent) const {
    nlohmann::json j;
    j["check"] = check;
    j["pairs"] = nlohmann::json::array();
    for (auto& p : pairs) {
        nlohmann::json e{{"idx", p.idx}, {"residual_zero", p.residual_zero}};
        if (!p.residual_zero) e["residual"] = p.residual;
        j["pairs"].push_back(e);
    }
    j["passed"] = passed();
    if (!applicable) j["applicable"] = false;
    if (!note.empty()) j["note"] = note;
    return j.dump(indent);
}

std::string Report::str() const {
    std::ostringstream os;
    os << check << ": " << (passed() ? "PASS" : "FAIL") << " (" << pairs.size() - failures() << "/" << pairs.size()
       << " zero)";
    if (!note.empty()) os << " " << note;
    os << "\n";
    for (auto& p : pairs) {
        if (p.residual_zero) continue;
        os << "  " << p.idx << ": " << p.residual << "\n";
    }
    return os.str();
}

}  // namespace drham
