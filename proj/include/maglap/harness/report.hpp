#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "maglap/errors.hpp"

namespace maglap::harness {

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

struct Check {
    std::string name;
    std::string statement;  // the mathematical claim being asserted
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

/// Exit status of a command.
enum class Outcome : int { Pass = 0, Violation = 1, Invalid = 2, SolverFailure = 3 };

struct Report {
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;            // data reported without assertion
    std::vector<std::string> solver_failures;  // cells that did not converge

    Check& check(std::string name, std::string statement, double measured, double tolerance,
                 bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), std::move(statement), measured, tolerance, pass,
                          std::move(detail)});
        return checks.back();
    }

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.pass ? 0 : 1;
        return n;
    }

    /// Checks whose name starts with `prefix` (all of them when empty).
    bool passed(const std::string& prefix = {}) const {
        bool any = false;
        for (const auto& c : checks)
            if (c.name.rfind(prefix, 0) == 0) {
                any = true;
                if (!c.pass) return false;
            }
        return any && (prefix.empty() ? solver_failures.empty() : true);
    }

    Outcome outcome() const {
        if (!solver_failures.empty()) return Outcome::SolverFailure;
        return failures() == 0 ? Outcome::Pass : Outcome::Violation;
    }

    void merge(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
        solver_failures.insert(solver_failures.end(), other.solver_failures.begin(),
                               other.solver_failures.end());
    }

    std::string text() const {
        std::ostringstream os;
        os << "== " << title << " ==\n";
        for (const auto& c : checks) {
            os << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "\n"
               << "       claim:     " << c.statement << "\n"
               << "       measured:  " << format_double(c.measured)
               << "   tolerance: " << format_double(c.tolerance) << "\n";
            if (!c.detail.empty()) os << "       detail:    " << c.detail << "\n";
        }
        for (const auto& f : solver_failures) os << "[solver failure] " << f << "\n";
        for (const auto& n : notes) os << "[data] " << n << "\n";
        os << checks.size() - failures() << "/" << checks.size() << " checks passed";
        if (!solver_failures.empty()) os << ", " << solver_failures.size() << " solver failures";
        os << "\n";
        return os.str();
    }
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) {
        if (row.size() != header.size()) throw InvalidInput("CsvTable: row width mismatch");
        rows.push_back(std::move(row));
    }

    std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out;
    }

    static CsvTable parse(const std::string& text) {
        CsvTable t;
        std::istringstream is(text);
        std::string line;
        bool first = true;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream ls(line);
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (!line.empty() && line.back() == ',') cells.emplace_back();
            if (first) {
                t.header = std::move(cells);
                first = false;
            } else {
                t.add(std::move(cells));
            }
        }
        return t;
    }
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigurationError("cannot open " + path.string() + " for writing");
    os << content;
    if (!os) throw ConfigurationError("failed writing " + path.string());
}

}  // namespace maglap::harness
