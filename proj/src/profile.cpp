#include "rcdesign/profile.hpp"

#include <sstream>

namespace rcd {

ConstraintProfile ConstraintProfile::nta() {
    ConstraintProfile p;
    p.name = "nta";
    return p;
}

ConstraintProfile ConstraintProfile::ta() {
    ConstraintProfile p;
    p.name = "ta";
    p.replication = ReplicationMode::Exact;
    p.rc.mode = p.rr.mode = p.cc.mode = DimMode::Exact;
    return p;
}

ConstraintProfile ConstraintProfile::near_youden() {
    ConstraintProfile p = nta();
    p.name = "near-youden";
    p.require_v_eq_c = true;
    return p;
}

ConstraintProfile ConstraintProfile::gta(int omega_rc, int omega_rr, int omega_cc) {
    ConstraintProfile p;
    std::ostringstream n;
    n << "gta:" << omega_rc << ',' << omega_rr << ',' << omega_cc;
    p.name = n.str();
    p.rc = {DimMode::Window, omega_rc};
    p.rr = {DimMode::Window, omega_rr};
    p.cc = {DimMode::Window, omega_cc};
    return p;
}

ConstraintProfile ConstraintProfile::double_array() {
    ConstraintProfile p;
    p.name = "double";
    p.replication = ReplicationMode::Exact;
    p.rc.mode = DimMode::Unconstrained;
    p.rr.mode = DimMode::Exact;
    p.cc.mode = DimMode::Exact;
    return p;
}

ConstraintProfile ConstraintProfile::sesqui() {
    ConstraintProfile p;
    p.name = "sesqui";
    p.replication = ReplicationMode::Exact;
    p.rc.mode = DimMode::Exact;
    p.rr.mode = DimMode::Exact;
    p.cc.mode = DimMode::Unconstrained;
    return p;
}

ConstraintProfile ConstraintProfile::mono_transposed() {
    ConstraintProfile p;
    p.name = "monot";
    p.replication = ReplicationMode::Exact;
    p.rc.mode = DimMode::Unconstrained;
    p.rr.mode = DimMode::Exact;
    p.cc.mode = DimMode::Unconstrained;
    return p;
}

ConstraintProfile ConstraintProfile::ao() {
    ConstraintProfile p;
    p.name = "ao";
    p.replication = ReplicationMode::Exact;
    p.rc.mode = DimMode::Exact;
    p.rr.mode = DimMode::Unconstrained;
    p.cc.mode = DimMode::Unconstrained;
    return p;
}

std::optional<ConstraintProfile> parse_profile(const std::string& text) {
    if (text == "nta") return ConstraintProfile::nta();
    if (text == "ta") return ConstraintProfile::ta();
    if (text == "near-youden") return ConstraintProfile::near_youden();
    if (text == "double") return ConstraintProfile::double_array();
    if (text == "sesqui") return ConstraintProfile::sesqui();
    if (text == "monot") return ConstraintProfile::mono_transposed();
    if (text == "ao") return ConstraintProfile::ao();
    if (text.rfind("gta:", 0) == 0) {
        std::istringstream iss(text.substr(4));
        int a, b, c;
        char c1, c2;
        if (iss >> a >> c1 >> b >> c2 >> c && c1 == ',' && c2 == ',' && a >= 1 && b >= 1 &&
            c >= 1) {
            std::string rest;
            if (!(iss >> rest)) return ConstraintProfile::gta(a, b, c);
        }
    }
    return std::nullopt;
}

std::optional<std::string> profile_admissibility_issue(const ConstraintProfile& pr,
                                                       const Params& p) {
    if (pr.replication == ReplicationMode::Exact && !p.e.is_integer())
        return "e = " + p.e.str() + " is not an integer";
    if (pr.rc.mode == DimMode::Exact && !p.lambda_rc.is_integer())
        return "lambda_rc = " + p.lambda_rc.str() + " is not an integer";
    if (pr.rr.mode == DimMode::Exact && !p.lambda_rr.is_integer())
        return "lambda_rr = " + p.lambda_rr.str() + " is not an integer";
    if (pr.cc.mode == DimMode::Exact && !p.lambda_cc.is_integer())
        return "lambda_cc = " + p.lambda_cc.str() + " is not an integer";
    if (pr.require_v_eq_c && p.v != p.c)
        return "near-youden requires v = c";
    return std::nullopt;
}

bool profile_matches(const ConstraintProfile& pr, const ClassReport& rep) {
    if (!rep.binary) return false;
    if (!(rep.equireplicate || rep.near_equireplicate)) return false;
    if (pr.replication == ReplicationMode::Exact && !rep.equireplicate) return false;

    auto dim_ok = [](const DimConstraint& d, const std::map<int, int>& hist, int omega) {
        switch (d.mode) {
            case DimMode::Exact:
                return hist.size() == 1;
            case DimMode::TwoValued:
                return omega <= 2;
            case DimMode::Window:
                return omega <= d.omega;
            case DimMode::Unconstrained:
                return true;
        }
        return false;
    };
    if (!dim_ok(pr.rc, rep.rc_hist, rep.omega_rc)) return false;
    if (!dim_ok(pr.rr, rep.rr_hist, rep.omega_rr)) return false;
    if (!dim_ok(pr.cc, rep.cc_hist, rep.omega_cc)) return false;

    if (pr.proper) {
        auto constant = [](const std::map<int, int>& h) { return h.size() == 1; };
        if (pr.rc.mode == DimMode::Unconstrained && constant(rep.rc_hist)) return false;
        if (pr.rr.mode == DimMode::Unconstrained && constant(rep.rr_hist)) return false;
        if (pr.cc.mode == DimMode::Unconstrained && constant(rep.cc_hist)) return false;
    }
    return true;
}

}  // namespace rcd
