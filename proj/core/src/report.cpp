#include "jns/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace jns {

std::string Report::format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Report::set(const std::string& key, const std::string& value) {
    rows_.push_back({key, value});
}

void Report::set(const std::string& key, double value) { set(key, format_double(value)); }

void Report::set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }

void Report::set(const std::string& key, bool value) {
    set(key, std::string(value ? "true" : "false"));
}

void Report::add_check(const std::string& name, double lhs, double rhs, bool pass) {
    set("check." + name + ".lhs", lhs);
    set("check." + name + ".rhs", rhs);
    set("check." + name + ".slack", rhs - lhs);
    set("check." + name + ".pass", pass);
    if (!pass) ++failures_;
}

void Report::add_experiment(const ExperimentResult& result) {
    set("experiment", result.name);
    for (const auto& [key, value] : result.values) set(result.name + "." + key, value);
    for (const ExperimentCheck& check : result.checks)
        add_check(result.name + ": " + check.name, check.lhs, check.rhs, check.pass);
}

void Report::add_packing(const std::string& key, const Packing& packing, int n) {
    set(key + ".size", std::int64_t(packing.cubes.size()));
    for (std::size_t i = 0; i < packing.cubes.size(); ++i) {
        std::ostringstream os;
        os << "level=" << packing.cubes[i].level << " index=";
        for (int a = 0; a < n; ++a) os << (a ? "," : "") << packing.cubes[i].index[a];
        set(key + "." + std::to_string(i), os.str());
    }
}

void Report::write(std::ostream& os) const {
    for (const auto& [key, value] : rows_) os << key << " = " << value << "\n";
}

std::string Report::to_string() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace jns
