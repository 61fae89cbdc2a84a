#pragma once

#include <json.hpp>

#include "tilehom/homology.hpp"
#include "tilehom/singular.hpp"

namespace tilehom {

using Json = nlohmann::ordered_json;

/// Rationals serialize as integers when integral, else as "p/q" strings.
inline Json rat_to_json(const Rat& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(rat_to_string(q));
}

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(long(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw std::invalid_argument("expected integer or \"p/q\" string");
}

inline Json felem_to_json(const FElem& e) {
    Json arr = Json::array();
    for (const Rat& c : e) arr.push_back(rat_to_json(c));
    return arr;
}

inline FElem felem_from_json(const Json& j, int degree) {
    if (!j.is_array() || int(j.size()) != degree)
        throw std::invalid_argument("malformed field data (element length)");
    FElem e;
    for (const auto& c : j) e.push_back(rat_from_json(c));
    return e;
}

inline Json fvec_to_json(const FVec& v) {
    Json arr = Json::array();
    for (const FElem& e : v) arr.push_back(felem_to_json(e));
    return arr;
}

inline FVec fvec_from_json(const Json& j, int n, int degree) {
    if (!j.is_array() || int(j.size()) != n)
        throw std::invalid_argument("malformed field data (vector length)");
    FVec v;
    for (const auto& e : j) v.push_back(felem_from_json(e, degree));
    return v;
}

inline Json group_to_json(const FgAbelianGroup& g) {
    Json j;
    j["free"] = g.free_rank;
    Json f = Json::array();
    for (const Int& d : g.invariant_factors) f.push_back(d.get_str());
    j["factors"] = f;
    j["primary"] = g.to_string();
    return j;
}

inline FgAbelianGroup group_from_json(const Json& j) {
    std::vector<Int> factors;
    for (const auto& d : j.at("factors"))
        factors.push_back(d.is_string() ? Int(d.get<std::string>()) : Int(long(d.get<long long>())));
    return FgAbelianGroup(j.at("free").get<int>(), std::move(factors));
}

/// --- scheme files ----------------------------------------------------------

inline Json scheme_to_json(const ProjectionScheme& s) {
    Json j;
    j["name"] = s.name;
    j["d"] = s.d;
    j["n"] = s.n;
    Json poly = Json::array();
    for (const Int& c : s.field.min_poly()) poly.push_back(c.get_str());
    j["field"] = Json{{"min_poly", poly}};
    Json cols = Json::array();
    for (const FVec& c : s.lattice) cols.push_back(fvec_to_json(c));
    j["lattice"] = Json{{"pi_int", cols}};
    Json planes = Json::array();
    for (const auto& h : s.hyperplanes) {
        Json hp;
        Json dirs = Json::array();
        for (const auto& dvec : h.directions) dirs.push_back(fvec_to_json(dvec));
        hp["directions"] = dirs;
        hp["offset"] = fvec_to_json(h.offset);
        planes.push_back(hp);
    }
    j["hyperplanes"] = planes;
    if (!s.point_group.empty()) {
        Json pg = Json::array();
        for (const auto& m : s.point_group) {
            Json rows = Json::array();
            for (int i = 0; i < m.rows(); ++i) {
                Json row = Json::array();
                for (int jj = 0; jj < m.cols(); ++jj) row.push_back(long(m(i, jj).get_si()));
                rows.push_back(row);
            }
            pg.push_back(rows);
        }
        j["point_group"] = pg;
    }
    return j;
}

/// Parses and validates a scheme file; throws std::invalid_argument with a
/// distinct diagnostic per failure mode.
inline ProjectionScheme parse_scheme(const Json& j) {
    ProjectionScheme s;
    try {
        s.name = j.at("name").get<std::string>();
        s.d = j.at("d").get<int>();
        s.n = j.at("n").get<int>();
    } catch (const Json::exception&) {
        throw std::invalid_argument("scheme file: missing or malformed name/d/n");
    }
    if (s.n <= 0 || s.d < 0 || (s.n + s.d) % s.n != 0)
        throw std::invalid_argument("scheme '" + s.name + "': nu=(n+d)/n not an integer");
    std::vector<Int> poly;
    try {
        for (const auto& c : j.at("field").at("min_poly"))
            poly.push_back(c.is_string() ? Int(c.get<std::string>())
                                         : Int(long(c.get<long long>())));
    } catch (const Json::exception&) {
        throw std::invalid_argument("scheme '" + s.name + "': malformed field data (min_poly)");
    }
    try {
        s.field = NumberField(poly);
    } catch (const std::exception& e) {
        throw std::invalid_argument("scheme '" + s.name + "': malformed field data (" +
                                    std::string(e.what()) + ")");
    }
    int g = s.field.degree();
    try {
        for (const auto& col : j.at("lattice").at("pi_int"))
            s.lattice.push_back(fvec_from_json(col, s.n, g));
    } catch (const Json::exception&) {
        throw std::invalid_argument("scheme '" + s.name + "': malformed field data (lattice)");
    }
    const NumberField& F = s.field;
    for (const auto& hp : j.at("hyperplanes")) {
        Hyperplane h;
        if (hp.contains("directions")) {
            for (const auto& dv : hp.at("directions")) h.directions.push_back(fvec_from_json(dv, s.n, g));
        } else if (hp.contains("normal")) {
            // directions = kernel of the coordinate bilinear form with the normal
            FVec nrm = fvec_from_json(hp.at("normal"), s.n, g);
            std::vector<FVec> rows(s.n, fvec_zero(F, 1));
            for (int i = 0; i < s.n; ++i) rows[i][0] = nrm[i];
            for (auto& coeffs : FSpace::left_kernel(F, rows, 1))
                h.directions.push_back(FVec(coeffs.begin(), coeffs.end()));
        } else {
            throw std::invalid_argument("scheme '" + s.name +
                                        "': hyperplane needs directions or normal");
        }
        h.offset = hp.contains("offset") ? fvec_from_json(hp.at("offset"), s.n, g)
                                         : fvec_zero(F, s.n);
        s.hyperplanes.push_back(std::move(h));
    }
    if (j.contains("point_group")) {
        for (const auto& mj : j.at("point_group")) {
            IntMat m(int(mj.size()), int(mj.size()));
            for (int i = 0; i < m.rows(); ++i)
                for (int jj = 0; jj < m.cols(); ++jj) m(i, jj) = long(mj[i][jj].get<long long>());
            s.point_group.push_back(std::move(m));
        }
    }
    s.validate();
    return s;
}

inline std::optional<ExpectedHomology> expected_from_json(const Json& j) {
    if (!j.contains("expected")) return std::nullopt;
    ExpectedHomology e;
    const Json& ej = j.at("expected");
    if (ej.contains("homology")) {
        for (const auto& gj : ej.at("homology")) e.groups.push_back(group_from_json(gj));
        e.groups_known = true;
    }
    return e;
}

/// --- reports ----------------------------------------------------------------

/// Per-field comparison outcome of a --check run.
struct CheckField {
    std::string field;
    bool pass = false;
    std::string expected, actual;
};

/// Machine-checkable result of one computation. The structured form is
/// byte-stable across runs; wall-clock timings appear only in the
/// human-readable rendering.
struct Report {
    std::string scheme_name;
    int d = 0, n = 0;
    std::vector<long> counts;  ///< L_0 .. L_{n-1}
    std::vector<std::vector<long>> per_container;  ///< L_{r}^Theta tables by level
    HomologyResult h;
    std::string verdict;  ///< "PASS" / "FAIL" / "PARTIAL" / "" (no expectations)
    std::vector<CheckField> fields;

    Json to_json() const {
        Json j;
        j["scheme"] = Json{{"name", scheme_name}, {"d", d}, {"n", n}, {"nu", (n + d) / n}};
        Json cj = Json::array();
        for (long v : counts) cj.push_back(v);
        j["counts"] = Json{{"L", cj}};
        Json pc = Json::array();
        for (const auto& lvl : per_container) {
            Json row = Json::array();
            for (long v : lvl) row.push_back(v);
            pc.push_back(row);
        }
        j["counts"]["per_container"] = pc;
        Json hj = Json::array();
        for (const auto& g : h.groups) hj.push_back(group_to_json(g));
        j["homology"] = hj;
        Json dj = Json::array();
        for (long v : h.D) dj.push_back(v);
        j["ranks"] = Json{{"D", dj}, {"euler", h.euler}};
        if (h.corrected_D) {
            Json cd = Json::array();
            for (long v : *h.corrected_D) cd.push_back(v);
            j["ranks"]["corrected_D"] = cd;
            j["ranks"]["corrected_euler"] = *h.corrected_euler;
        }
        Json mp = Json::array();
        for (const auto& [p, Dp] : h.modp_D) {
            Json row;
            row["p"] = p.get_str();
            Json dpj = Json::array(), tpj = Json::array();
            for (long v : Dp) dpj.push_back(v);
            for (long v : h.torsion_ranks.at(p)) tpj.push_back(v);
            row["D"] = dpj;
            row["T"] = tpj;
            mp.push_back(row);
        }
        j["modp"] = mp;
        if (h.ktheory) {
            j["ktheory"] = Json{{"K0", group_to_json(h.ktheory->first)},
                                {"K1", group_to_json(h.ktheory->second)}};
        }
        Json diag;
        if (h.t1_prime) diag["t1_prime"] = group_to_json(*h.t1_prime);
        if (h.t1_dblprime) diag["t1_dblprime"] = group_to_json(*h.t1_dblprime);
        if (h.t0_prime) diag["t0_prime"] = group_to_json(*h.t0_prime);
        Json tr = Json::array();
        for (const auto& line : h.extension_trace) tr.push_back(line);
        diag["extension_trace"] = tr;
        Json chk = Json::array();
        for (const auto& line : h.checks) chk.push_back(line);
        diag["verifications"] = chk;
        diag["partial"] = h.partial;
        j["diagnostics"] = diag;
        if (!verdict.empty()) {
            Json cf = Json::array();
            for (const auto& f : fields)
                cf.push_back(Json{{"field", f.field},
                                  {"pass", f.pass},
                                  {"expected", f.expected},
                                  {"actual", f.actual}});
            j["check"] = Json{{"verdict", verdict}, {"fields", cf}};
        }
        return j;
    }

    static Report from_json(const Json& j) {
        Report r;
        r.scheme_name = j.at("scheme").at("name").get<std::string>();
        r.d = j.at("scheme").at("d").get<int>();
        r.n = j.at("scheme").at("n").get<int>();
        r.h.d = r.d;
        r.h.n = r.n;
        for (const auto& v : j.at("counts").at("L")) r.counts.push_back(v.get<long>());
        for (const auto& row : j.at("counts").at("per_container")) {
            std::vector<long> lvl;
            for (const auto& v : row) lvl.push_back(v.get<long>());
            r.per_container.push_back(lvl);
        }
        for (const auto& gj : j.at("homology")) r.h.groups.push_back(group_from_json(gj));
        for (const auto& v : j.at("ranks").at("D")) r.h.D.push_back(v.get<long>());
        r.h.euler = j.at("ranks").at("euler").get<long>();
        if (j.at("ranks").contains("corrected_D")) {
            std::vector<long> cd;
            for (const auto& v : j.at("ranks").at("corrected_D")) cd.push_back(v.get<long>());
            r.h.corrected_D = cd;
            r.h.corrected_euler = j.at("ranks").at("corrected_euler").get<long>();
        }
        for (const auto& row : j.at("modp")) {
            Int p(row.at("p").get<std::string>());
            std::vector<long> Dp, Tp;
            for (const auto& v : row.at("D")) Dp.push_back(v.get<long>());
            for (const auto& v : row.at("T")) Tp.push_back(v.get<long>());
            r.h.modp_D[p] = Dp;
            r.h.torsion_ranks[p] = Tp;
        }
        if (j.contains("ktheory"))
            r.h.ktheory = {group_from_json(j.at("ktheory").at("K0")),
                           group_from_json(j.at("ktheory").at("K1"))};
        const Json& diag = j.at("diagnostics");
        if (diag.contains("t1_prime")) r.h.t1_prime = group_from_json(diag.at("t1_prime"));
        if (diag.contains("t1_dblprime")) r.h.t1_dblprime = group_from_json(diag.at("t1_dblprime"));
        if (diag.contains("t0_prime")) r.h.t0_prime = group_from_json(diag.at("t0_prime"));
        for (const auto& line : diag.at("extension_trace"))
            r.h.extension_trace.push_back(line.get<std::string>());
        for (const auto& line : diag.at("verifications"))
            r.h.checks.push_back(line.get<std::string>());
        r.h.partial = diag.at("partial").get<bool>();
        if (j.contains("check")) {
            r.verdict = j.at("check").at("verdict").get<std::string>();
            for (const auto& f : j.at("check").at("fields"))
                r.fields.push_back(CheckField{f.at("field").get<std::string>(),
                                              f.at("pass").get<bool>(),
                                              f.at("expected").get<std::string>(),
                                              f.at("actual").get<std::string>()});
        }
        return r;
    }

    bool equivalent(const Report& o) const { return to_json() == o.to_json(); }
};

/// Builds the report, filling the check verdict from the expected values.
inline Report make_report(const ProjectionScheme& s, const SingularComplex& cx,
                          const HomologyResult& h,
                          const std::optional<ExpectedHomology>& expected) {
    Report r;
    r.scheme_name = s.name;
    r.d = s.d;
    r.n = s.n;
    r.h = h;
    for (int lvl = 0; lvl < s.n; ++lvl) r.counts.push_back(cx.count(lvl));
    for (int lvl = 1; lvl < s.n; ++lvl) {
        std::vector<long> row;
        for (const auto& o : cx.levels[lvl]) row.push_back(long(cx.members(lvl, o.id, 0).size()));
        r.per_container.push_back(row);
    }
    if (expected) {
        bool all = true;
        auto add = [&](const std::string& name, const FgAbelianGroup& want,
                       const FgAbelianGroup& got) {
            CheckField f;
            f.field = name;
            f.expected = want.to_string();
            f.actual = got.to_string();
            f.pass = (want == got);
            all &= f.pass;
            r.fields.push_back(f);
        };
        if (expected->groups_known)
            for (size_t k = 0; k < expected->groups.size(); ++k)
                add("H_" + std::to_string(k), expected->groups[k], h.groups[k]);
        if (expected->torsion_h0) add("Torsion(H_0)", *expected->torsion_h0, h.groups[0].torsion());
        if (expected->torsion_h1) add("Torsion(H_1)", *expected->torsion_h1, h.groups[1].torsion());
        if (expected->t1_prime && h.t1_prime) add("t1'", *expected->t1_prime, *h.t1_prime);
        if (expected->t1_dblprime && h.t1_dblprime)
            add("t1''", *expected->t1_dblprime, *h.t1_dblprime);
        if (expected->t0_prime && h.t0_prime) add("t0'", *expected->t0_prime, *h.t0_prime);
        r.verdict = h.partial ? "PARTIAL" : (all ? "PASS" : "FAIL");
    } else if (h.partial) {
        r.verdict = "PARTIAL";
    }
    return r;
}

/// Human-readable rendering; timings are passed in separately so that the
/// structured report stays byte-identical across runs.
inline std::string render_report(const Report& r,
                                 const std::vector<std::pair<std::string, double>>& timings = {}) {
    std::ostringstream os;
    os << "scheme " << r.scheme_name << "  (d=" << r.d << ", n=" << r.n
       << ", nu=" << (r.n + r.d) / r.n << ")\n";
    os << "counts: ";
    for (size_t i = 0; i < r.counts.size(); ++i)
        os << "L" << i << "=" << r.counts[i] << (i + 1 < r.counts.size() ? ", " : "\n");
    for (size_t k = 0; k < r.h.groups.size(); ++k)
        os << "  H_" << k << " = " << r.h.groups[k].to_string() << "\n";
    os << "ranks D:";
    for (long v : r.h.D) os << " " << v;
    os << "   euler = " << r.h.euler << "\n";
    for (const auto& [p, Dp] : r.h.modp_D) {
        os << "  p=" << p.get_str() << "  D^p:";
        for (long v : Dp) os << " " << v;
        os << "   T^p:";
        for (long v : r.h.torsion_ranks.at(p)) os << " " << v;
        os << "\n";
    }
    if (r.h.ktheory)
        os << "K^0 = " << r.h.ktheory->first.to_string()
           << "   K^1 = " << r.h.ktheory->second.to_string() << "\n";
    if (r.h.t1_prime)
        os << "t1' = " << r.h.t1_prime->to_string() << "   t1'' = " << r.h.t1_dblprime->to_string()
           << "   t0' = " << r.h.t0_prime->to_string() << "\n";
    for (const auto& line : r.h.extension_trace) os << "  | " << line << "\n";
    if (!r.verdict.empty()) {
        os << "check: " << r.verdict << "\n";
        for (const auto& f : r.fields)
            if (!f.pass)
                os << "  MISMATCH " << f.field << ": expected " << f.expected << ", got "
                   << f.actual << "\n";
    }
    for (const auto& [phase, secs] : timings) os << "  time " << phase << ": " << secs << "s\n";
    return os.str();
}

}  // namespace tilehom
