#ifndef PROCOMP_CATALOG_HPP
#define PROCOMP_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "procomp/composition.hpp"
#include "procomp/order_conditions.hpp"

namespace procomp {

enum class SchemeKind { kernel, classic, processor };

struct CatalogEntry {
    std::string id;
    SchemeKind kind = SchemeKind::classic;
    std::vector<double> half_alpha;  // kernels and classic compositions
    std::vector<double> beta;        // processors
    int order = 0;
    int effective_order = 0;
    std::string source;              // table / equation citation
    std::string paired_kernel;       // processors: kernel id they belong to

    int stages() const { return static_cast<int>(half_alpha.size()); }
    CompositionScheme scheme() const;
    ProcessorScheme processor() const;
};

// id -> entry; throws std::out_of_range listing the valid ids when missing.
const CatalogEntry& catalog_get(const std::string& id);
bool catalog_has(const std::string& id);
std::vector<std::string> catalog_ids();

// Adds entries from a JSON coefficient file (array of objects with keys
// id, kind, order, effective_order, half_alpha / beta, paired_kernel).
// Used for third-party schemes such as SS7_6, whose coefficients this
// catalog does not carry. Returns the ids added.
std::vector<std::string> catalog_load_external(const std::string& path);

struct EntryVerification {
    std::string id;
    bool passed = false;
    std::string detail;  // violated condition and residual on failure
};

struct VerificationReport {
    std::vector<EntryVerification> entries;
    bool all_passed() const;
};

// Checks every entry: kernels reach exactly their claimed effective order,
// classic compositions their conventional order, processors satisfy the
// conditions against their paired kernels.
VerificationReport verify_all();
VerificationReport verify_entry(const std::string& id);

}  // namespace procomp

#endif
