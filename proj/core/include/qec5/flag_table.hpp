#pragma once

#include <map>
#include <string>

#include "qec5/decoder.hpp"
#include "qec5/detector_graph.hpp"
#include "qec5/noise.hpp"

namespace qec5 {

// Lookup from flagged-extraction observations to the data correction that
// cancels the propagated hook error. Keys carry the flagged stabilizer, the
// flag outcome, and the residual syndrome (the outcome vector a clean
// subsequent cycle reports).
struct FlagTable {
    struct Key {
        int block = 0;
        int flag_value = 0;
        std::array<int, 4> syndrome{};
        auto operator<=>(const Key&) const = default;
    };
    struct Entry {
        PauliString correction;
        bool ambiguous = false;  // inequivalent minimal corrections collided
        int sources = 0;         // elementary faults mapped onto this key
    };

    Dim dim;
    int version = 1;
    std::map<Key, Entry> entries;

    const Entry* find(const Key& k) const {
        auto it = entries.find(k);
        return it == entries.end() ? nullptr : &it->second;
    }

    std::string to_json() const;
    static FlagTable from_json(const std::string& text);
};

// Builds the table by enumerating every elementary circuit-level fault in
// the first cycle of a two-cycle flagged extraction and propagating it
// through the tableau. Conflicting keys keep the minimum-weight correction
// and are marked ambiguous when the alternatives differ by a logical.
FlagTable build_flag_table(const Dim& dim);

// Applies table corrections for every raised flag and cancels their
// syndrome footprint from subsequent cycles. Returns the accumulated data
// correction; `record` is adjusted in place.
PauliString apply_flag_corrections(const FlagTable& table, SyndromeRecord& record,
                                   const CheckMatrix& H);

struct FlagAuditFailure {
    NoiseSite site;
    PauliString fault;
    PauliString residual_after_correction;
};

struct FlagAuditResult {
    int faults_checked = 0;
    int flagged_faults = 0;
    std::vector<FlagAuditFailure> failures;
    bool all_pass() const { return failures.empty(); }
};

// Exhaustive single-fault audit of one flagged cycle: every elementary
// circuit-level fault is injected, decoded (flag corrections first, then
// the chosen decoder), and checked for trivial logical action.
FlagAuditResult audit_flag_table(const Dim& dim, DecoderKind decoder, int cycles = 3);

}  // namespace qec5
