#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace bvf {

/// One named identity or axiom checked over many cases.
struct Check {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::vector<std::string> violations;

    void fail(std::string what)
    {
        passed = false;
        violations.push_back(std::move(what));
    }
};

/// Ordered collection of checks; a report passes iff every check passes.
struct Report {
    std::deque<Check> checks;  // deque: references returned by add() stay valid
    std::vector<std::string> notes;

    Check& add(const std::string& name)
    {
        checks.push_back(Check{name, true, 0, {}});
        return checks.back();
    }
    const Check* find(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }
    bool passed() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
    /// Names of failed checks, in order.
    std::vector<std::string> failures() const
    {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.passed)
                out.push_back(c.name);
        return out;
    }
    void append(const Report& other, const std::string& prefix = "")
    {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        for (const auto& n : other.notes)
            notes.push_back(prefix + n);
    }
};

}  // namespace bvf
