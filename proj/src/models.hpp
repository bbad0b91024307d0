#pragma once

#include "koszul.hpp"

#include <optional>
#include <string>
#include <vector>

// The model catalog: machine-readable records of the Fano 3-fold and del
// Pezzo surface models, the textual model DSL, and per-record verification
// against the stored reference invariants.
namespace zl::models {

using bundles::ExprPtr;
using bwb::Space;

struct Expected {
    // 3-folds: (h0(-K), (-K)^3, h21, rho); del Pezzo: (K^2, chi(-K)).
    // Missing entries ("_") have no reference value.
    std::vector<std::optional<long long>> values;
};

struct ModelRecord {
    std::string id;   // "2-16" or "dp-5-1"
    int variant = 0;  // 0 = primary description
    Space space;
    ExprPtr bundle;   // null for Y = X records (printed as "none")
    Expected expected;
    bool tagRestrictedSection = false;
    bool tagWeightedStoredOnly = false;
    bool tagExtensionBundle = false;

    bool delPezzo() const { return id.rfind("dp-", 0) == 0; }
    int picard_from_id() const;
};

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

// Bit-exact grammar, whitespace-insensitive between tokens, '#' line comments.
std::vector<ModelRecord> parse(const std::string& text);
std::string print_record(const ModelRecord& r); // canonical one-line form
std::string print_space(const Space& s);
std::string print_bundle(const ExprPtr& e);

// The embedded database: 105 three-fold families plus alternatives, plus the
// 10 del Pezzo records.
const std::vector<ModelRecord>& catalog();
// Records for an id prefix, sorted by (id, variant).
std::vector<const ModelRecord*> lookup(const std::string& idPrefix);

struct FieldCheck {
    std::string name;
    std::string computed;
    std::string expected; // empty when no reference value
    bool pass = true;     // informational fields with no reference stay true
};

struct VerifyReport {
    std::string id;
    int variant = 0;
    enum class Status { Pass, Fail, NotMachineVerifiable } status = Status::Pass;
    bool formal = false;
    std::vector<FieldCheck> fields;
    std::vector<std::string> constraintsUsed;
    std::vector<std::string> notPinched; // hodge entries that stayed intervals
    std::string error;
};

VerifyReport verify(const ModelRecord& r);

} // namespace zl::models
