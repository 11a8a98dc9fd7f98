#include "colorpoincare/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace colorpoincare {

std::string to_text(const ToolReport& r) {
    std::ostringstream os;
    os << "== " << r.command << " ==\n";
    for (const auto& [k, v] : r.config) os << "  " << k << " = " << v << "\n";
    for (const auto& s : r.suites) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3fs", s.seconds);
        os << (s.passed() ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.cases << " checks, "
           << s.failure_count << " failures (" << buf << ")\n";
        for (const auto& [k, v] : s.info) os << "    " << k << " = " << v << "\n";
        for (const auto& f : s.failures) os << "    at " << f.context << ": " << f.detail << "\n";
        if (s.failure_count > static_cast<long long>(s.failures.size()))
            os << "    ... " << (s.failure_count - static_cast<long long>(s.failures.size()))
               << " further failures not shown\n";
    }
    os << (r.passed() ? "RESULT: pass\n" : "RESULT: fail\n");
    return os.str();
}

std::string to_json(const ToolReport& r) {
    nlohmann::json j;
    j["schema"] = r.schema;
    j["command"] = r.command;
    j["config"] = r.config;
    j["passed"] = r.passed();
    j["suites"] = nlohmann::json::array();
    for (const auto& s : r.suites) {
        nlohmann::json js;
        js["name"] = s.name;
        js["cases"] = s.cases;
        js["failures"] = s.failure_count;
        js["passed"] = s.passed();
        js["seconds"] = s.seconds;
        js["info"] = s.info;
        js["examples"] = nlohmann::json::array();
        for (const auto& f : s.failures) js["examples"].push_back({{"context", f.context}, {"detail", f.detail}});
        j["suites"].push_back(std::move(js));
    }
    return j.dump(2);
}

}  // namespace colorpoincare
