#include "klr/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace klr {

CheckRecord CheckRecord::pass(std::string check, std::string statement, std::string instance) {
    return CheckRecord{std::move(check), std::move(statement), std::move(instance),
                       CheckStatus::Pass, ""};
}

CheckRecord CheckRecord::fail(std::string check, std::string statement, std::string instance,
                              std::string witness) {
    return CheckRecord{std::move(check), std::move(statement), std::move(instance),
                       CheckStatus::Fail, std::move(witness)};
}

void VerificationReport::merge(const VerificationReport& o) {
    records_.insert(records_.end(), o.records_.begin(), o.records_.end());
}

void VerificationReport::sort_records() {
    std::stable_sort(records_.begin(), records_.end(), [](const CheckRecord& a,
                                                          const CheckRecord& b) {
        if (a.check != b.check) return a.check < b.check;
        if (a.statement != b.statement) return a.statement < b.statement;
        return a.instance < b.instance;
    });
}

int VerificationReport::passed() const {
    int n = 0;
    for (const auto& r : records_) n += r.status == CheckStatus::Pass ? 1 : 0;
    return n;
}

int VerificationReport::failed() const {
    return static_cast<int>(records_.size()) - passed();
}

namespace {
const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "error";
    }
}
}  // namespace

std::string VerificationReport::to_json(bool include_timing) const {
    nlohmann::json j;
    j["schema"] = 1;
    j["plan"] = plan_;
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records_) {
        nlohmann::json e;
        e["check"] = r.check;
        e["statement"] = r.statement;
        e["instance"] = r.instance;
        e["status"] = status_name(r.status);
        if (!r.witness.empty()) e["witness"] = r.witness;
        recs.push_back(std::move(e));
    }
    j["records"] = std::move(recs);
    j["summary"] = {{"total", records_.size()}, {"passed", passed()}, {"failed", failed()}};
    if (include_timing) j["elapsed_ms"] = elapsed_ms_;
    return j.dump(2);
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out += c;
        }
        return out + "\"";
    };
    os << "check,statement,instance,status,witness\n";
    for (const auto& r : records_) {
        os << quote(r.check) << "," << quote(r.statement) << "," << quote(r.instance) << ","
           << status_name(r.status) << "," << quote(r.witness) << "\n";
    }
    return os.str();
}

std::string VerificationReport::to_pretty(bool verbose_failures) const {
    std::ostringstream os;
    if (!plan_.empty()) os << "plan: " << plan_ << "\n";
    for (const auto& r : records_) {
        if (r.status == CheckStatus::Pass) continue;
        os << "[FAIL] " << r.check << " | " << r.statement << " | " << r.instance << "\n";
        if (verbose_failures && !r.witness.empty()) os << "       " << r.witness << "\n";
    }
    os << (all_passed() ? "OK" : "FAILED") << ": " << passed() << "/" << records_.size()
       << " checks passed (" << elapsed_ms_ << " ms)\n";
    return os.str();
}

}  // namespace klr
