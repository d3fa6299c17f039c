#pragma once

#include "rcdesign/grid.hpp"
#include "rcdesign/params.hpp"

#include <optional>
#include <string>

namespace rcd {

enum class ReplicationMode { Exact, TwoValued };
enum class DimMode { Exact, TwoValued, Window, Unconstrained };

struct DimConstraint {
    DimMode mode = DimMode::TwoValued;
    int omega = 0;  // window width, Window mode only
};

// Which of replication / RC / RR / CC are pinned, and how. The named
// profiles cover every design class handled by the search.
struct ConstraintProfile {
    std::string name;
    ReplicationMode replication = ReplicationMode::TwoValued;
    DimConstraint rc, rr, cc;
    bool proper = false;     // keep only designs failing the unconstrained conditions
    bool require_v_eq_c = false;  // near-Youden case

    static ConstraintProfile nta();
    static ConstraintProfile ta();
    static ConstraintProfile near_youden();
    static ConstraintProfile gta(int omega_rc, int omega_rr, int omega_cc);
    static ConstraintProfile double_array();
    static ConstraintProfile sesqui();
    static ConstraintProfile mono_transposed();
    static ConstraintProfile ao();
};

// Parses "nta", "ta", "near-youden", "gta:2,2,3", "double", "sesqui",
// "monot", "ao". Returns nothing on an unknown name.
std::optional<ConstraintProfile> parse_profile(const std::string& text);

// Integrality conditions the profile puts on the parameters; returns the
// name of the first non-integer quantity, or nothing when admissible.
std::optional<std::string> profile_admissibility_issue(const ConstraintProfile& pr,
                                                       const Params& p);

// Does a complete classified grid belong to the profile's class?
bool profile_matches(const ConstraintProfile& pr, const ClassReport& rep);

}  // namespace rcd
