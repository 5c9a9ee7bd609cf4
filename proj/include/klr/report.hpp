#pragma once

#include <string>
#include <vector>

namespace klr {

enum class CheckStatus { Pass, Fail, Error };

struct CheckRecord {
    std::string check;      // suite-level name, e.g. "klr-relation"
    std::string statement;  // the verified identity, e.g. "tau_r^2 e(i) = Q(...) e(i)"
    std::string instance;   // quiver/sequence/index data
    CheckStatus status = CheckStatus::Pass;
    std::string witness;    // differing normal forms or error text on failure

    static CheckRecord pass(std::string check, std::string statement, std::string instance);
    static CheckRecord fail(std::string check, std::string statement, std::string instance,
                            std::string witness);
};

// Structured pass/fail record per checked identity.
class VerificationReport {
  public:
    explicit VerificationReport(std::string plan = "") : plan_(std::move(plan)) {}

    void add(CheckRecord r) { records_.push_back(std::move(r)); }
    void merge(const VerificationReport& o);
    void sort_records();

    const std::vector<CheckRecord>& records() const { return records_; }
    int passed() const;
    int failed() const;   // Fail and Error both count as failures
    bool all_passed() const { return failed() == 0; }

    const std::string& plan() const { return plan_; }
    void set_elapsed_ms(double ms) { elapsed_ms_ = ms; }
    double elapsed_ms() const { return elapsed_ms_; }

    // Deterministic except for the elapsed-ms field.
    std::string to_json(bool include_timing = true) const;
    std::string to_csv() const;
    std::string to_pretty(bool verbose_failures = true) const;

  private:
    std::string plan_;
    std::vector<CheckRecord> records_;
    double elapsed_ms_ = 0.0;
};

}  // namespace klr
