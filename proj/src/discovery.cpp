#include "fairpath/discovery.hpp"

#include <sstream>

#include "fairpath/errors.hpp"
#include "fairpath/format.hpp"

namespace fairpath {

std::string to_string(Judgment j) {
    switch (j) {
        case Judgment::No: return "no";
        case Judgment::Yes: return "yes";
        case Judgment::Indeterminate: return "indeterminate";
        case Judgment::Skipped: return "skipped";
    }
    return "?";
}

DiscoveryReport pse_dd(const CausalModel& model, const QueryPair& queries, double tau) {
    if (tau < 0.0) throw InvalidQuery("tau must be non-negative");
    if (!queries.direct && !queries.indirect)
        throw InvalidQuery("nothing to analyze: both queries absent");

    DiscoveryReport report;
    report.tau = tau;

    auto both_directions = [&](const PathQuery& q) {
        PathQuery reverse = q;
        reverse.cause = flipped(q.cause);
        return std::pair{path_specific_effect(model, q), path_specific_effect(model, reverse)};
    };

    if (queries.direct) {
        auto [fwd, rev] = both_directions(*queries.direct);
        report.se_direct_fwd = fwd;
        report.se_direct_rev = rev;
        report.judge_direct = (fwd > tau || rev > tau) ? Judgment::Yes : Judgment::No;
    }
    if (queries.indirect) {
        // The partition is direction-independent, so check identifiability
        // once up front instead of catching mid-computation.
        auto witnesses = recanting_witnesses(model.graph(), *queries.indirect);
        if (!witnesses.empty()) {
            report.judge_indirect = Judgment::Indeterminate;
            report.witnesses = std::move(witnesses);
        } else {
            auto [fwd, rev] = both_directions(*queries.indirect);
            report.se_indirect_fwd = fwd;
            report.se_indirect_rev = rev;
            report.judge_indirect = (fwd > tau || rev > tau) ? Judgment::Yes : Judgment::No;
        }
    }
    return report;
}

std::string render_report(const DiscoveryReport& report) {
    auto value = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string("n/a");
    };
    std::ostringstream out;
    out << "se_direct_fwd = " << value(report.se_direct_fwd) << '\n'
        << "se_direct_rev = " << value(report.se_direct_rev) << '\n'
        << "se_indirect_fwd = " << value(report.se_indirect_fwd) << '\n'
        << "se_indirect_rev = " << value(report.se_indirect_rev) << '\n'
        << "tau = " << format_double(report.tau) << '\n'
        << "judge_direct = " << to_string(report.judge_direct) << '\n'
        << "judge_indirect = " << to_string(report.judge_indirect) << '\n'
        << "witnesses =";
    for (std::size_t i = 0; i < report.witnesses.size(); ++i)
        out << (i ? "," : " ") << report.witnesses[i];
    out << '\n';
    return out.str();
}

std::map<std::string, std::string> parse_report(std::istream& in) {
    std::map<std::string, std::string> fields;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("report line " + std::to_string(lineno) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return fields;
}

}  // namespace fairpath
