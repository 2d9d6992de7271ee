#ifndef FAIRPATH_DISCOVERY_HPP
#define FAIRPATH_DISCOVERY_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairpath/model.hpp"
#include "fairpath/path_effects.hpp"

namespace fairpath {

/// Verdict for one discrimination channel. Indeterminate means the indirect
/// effect was unidentifiable (recanting witness); Skipped means the channel
/// was not analyzed at all.
enum class Judgment { No, Yes, Indeterminate, Skipped };

std::string to_string(Judgment j);

/// The direct and/or indirect query to analyze. Either side may be absent,
/// but not both.
struct QueryPair {
    std::optional<PathQuery> direct;
    std::optional<PathQuery> indirect;
};

/// Outcome of a discrimination discovery run: both directional effects per
/// analyzed channel, the threshold, and the per-channel judgments. Effect
/// values are absent for skipped channels and for an unidentifiable indirect
/// channel (whose witnesses are then listed).
struct DiscoveryReport {
    double tau = 0.05;
    std::optional<double> se_direct_fwd;
    std::optional<double> se_direct_rev;
    std::optional<double> se_indirect_fwd;
    std::optional<double> se_indirect_rev;
    Judgment judge_direct = Judgment::Skipped;
    Judgment judge_indirect = Judgment::Skipped;
    std::vector<std::string> witnesses;

    bool discrimination_claimed() const {
        return judge_direct == Judgment::Yes || judge_indirect == Judgment::Yes;
    }
    bool indeterminate() const { return judge_indirect == Judgment::Indeterminate; }
};

/// Discrimination discovery: computes SE(c+,c-) and SE(c-,c+) for each query
/// of the pair and claims discrimination on a channel when either direction
/// strictly exceeds tau. An unidentifiable indirect channel is judged
/// Indeterminate and its witnesses reported, rather than guessed at.
DiscoveryReport pse_dd(const CausalModel& model, const QueryPair& queries, double tau);

/// Canonical key-value rendering (one `key = value` line per field, fixed
/// order, absent effects rendered as n/a). Byte-stable for identical reports.
std::string render_report(const DiscoveryReport& report);

/// Parses any `key = value` report document (discovery or removal) into a
/// key -> value map. Throws ParseError on malformed lines.
std::map<std::string, std::string> parse_report(std::istream& in);

}  // namespace fairpath

#endif
