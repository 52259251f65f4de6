#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jns/norms.hpp"

namespace jns {

/// Ordered key/value document. Identical inputs produce byte-identical
/// bodies; wall time goes under the meta. prefix which consumers skip when
/// diffing.
class Report {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, bool value);

    /// Inequality record: lhs, rhs, slack and pass under a common prefix.
    void add_check(const std::string& name, double lhs, double rhs, bool pass);
    void add_check(const ExperimentCheck& check) {
        add_check(check.name, check.lhs, check.rhs, check.pass);
    }
    void add_experiment(const ExperimentResult& result);
    void add_packing(const std::string& key, const Packing& packing, int n);

    [[nodiscard]] bool all_passed() const { return failures_ == 0; }
    [[nodiscard]] int failures() const { return failures_; }

    void write(std::ostream& os) const;
    [[nodiscard]] std::string to_string() const;

    static std::string format_double(double v);

private:
    std::vector<std::pair<std::string, std::string>> rows_;
    int failures_ = 0;
};

}  // namespace jns
