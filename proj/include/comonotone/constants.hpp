#pragma once

// Named constants of the construction with their provenance.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace comonotone {

enum class Mode { Strict, Practical };
enum class Provenance { Formula, Estimated, Configured };

std::string to_string(Mode m);
std::string to_string(Provenance p);
Mode parse_mode(const std::string& s);

struct LedgerEntry {
    double value = 0.0;
    Provenance provenance = Provenance::Formula;
    std::string note;
};

class ConstantsLedger {
public:
    void set(const std::string& key, double value, Provenance p, std::string note = {});
    double get(const std::string& key) const;
    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    /// True when the value came from a user override.
    bool overridden(const std::string& key) const;
    const LedgerEntry& entry(const std::string& key) const;
    const std::map<std::string, LedgerEntry>& entries() const { return entries_; }

    Mode mode = Mode::Practical;

private:
    std::map<std::string, LedgerEntry> entries_;
};

/// Keys accepted by resolve_constants overrides.
const std::vector<std::string>& overridable_keys();

/// Fills every entry for (s, r). Overrides replace computed values and are
/// marked Configured. Practical defaults: n1 multiplier 2, n2 multiplier
/// 4, U weight searched; strict mode follows the multiplier formulas with
/// estimated kernel constants as leaves.
ConstantsLedger resolve_constants(int s, int r, Mode mode,
                                  const std::map<std::string, double>& overrides = {});

}  // namespace comonotone
