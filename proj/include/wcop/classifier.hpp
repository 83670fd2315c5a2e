#pragma once

#include <set>
#include <string>
#include <vector>

#include "wcop/checks.hpp"
#include "wcop/expr.hpp"

namespace wcop {

/// Yes/No only come from exact rules; Likely* only from grid evidence.
enum class Verdict { Yes, No, LikelyYes, LikelyNo, Unknown };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct RationaleEntry {
    std::string rule;
    /// Statement of the mathematical fact the rule applies.
    std::string citation;
    bool exact = true;
};

struct PropertyVerdict {
    Verdict value = Verdict::Unknown;
    std::vector<RationaleEntry> rationale;
};

/// psi * (f o phi); psi may carry a unit complex factor, recorded only as a flag.
struct SymbolPair {
    Expr psi;
    std::vector<Expr> phi;
    bool psi_phase = false;

    std::size_t dim() const noexcept { return phi.size(); }
    static SymbolPair parse(const std::string& psi, const std::string& phi, std::size_t dim = 1, bool phase = false);
};

struct ClassifierConfig {
    ProbeOptions probe;
    /// Rule ids that must not fire.
    std::set<std::string> disabled_rules;
    /// Run the grid probes when no exact rule applies.
    bool evidence = true;
};

struct ClassificationReport {
    PropertyVerdict acts_on_S;
    PropertyVerdict power_bounded;
    PropertyVerdict topologizable;
    PropertyVerdict m_topologizable;
    PropertyVerdict iterates_to_zero;
    PropertyVerdict uniformly_mean_ergodic;
    PropertyVerdict cesaro_bounded;
    PropertyVerdict weak_supercyclicity_possible;
    PropertyVerdict universal_schwartz_weights;
    std::vector<ProbeResult> evidence;

    /// (name, verdict) in the fixed report order.
    std::vector<std::pair<std::string, const PropertyVerdict*>> properties() const;
    const PropertyVerdict& property(const std::string& name) const;
};

PropertyVerdict classify_acts(const SymbolPair& sp, const ClassifierConfig& cfg = {},
                              std::vector<ProbeResult>* evidence = nullptr);

/// Throws PreconditionViolated when acts is an exact No.
PropertyVerdict classify_power_bounded(const SymbolPair& sp, const ClassifierConfig& cfg = {},
                                       std::vector<ProbeResult>* evidence = nullptr);

/// (topologizable, m-topologizable); throws PreconditionViolated when acts is an exact No.
std::pair<PropertyVerdict, PropertyVerdict> classify_topologizable(const SymbolPair& sp,
                                                                   const ClassifierConfig& cfg = {},
                                                                   std::vector<ProbeResult>* evidence = nullptr);

PropertyVerdict classify_iterates_to_zero(const SymbolPair& sp, const ClassifierConfig& cfg = {});

/// No means excluded. Throws NotApplicable unless d = 1 and phi is a polynomial.
PropertyVerdict classify_supercyclicity(const SymbolPair& sp, const ClassifierConfig& cfg = {});

/// Whether C_{psi,phi} acts for every Schwartz weight psi (a property of phi alone).
PropertyVerdict classify_universal_weights(const std::vector<Expr>& phi, const ClassifierConfig& cfg = {});

/// All properties with the implication lattice checked; throws InternalInconsistency on a violation.
ClassificationReport full_report(const SymbolPair& sp, const ClassifierConfig& cfg = {});

/// Throws InternalInconsistency when an implication between properties fails.
void check_lattice(const ClassificationReport& r);

}  // namespace wcop
