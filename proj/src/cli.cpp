// Command-line front end: parses a polynomial and a command, runs the requested
// computation, and prints the result in plain, latex, or json form.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qoz/monodromy.hpp"

using json = nlohmann::ordered_json;
using namespace qoz;

namespace {

struct JobSpec {
    std::string poly;
    std::string file;
    std::string vars_csv;
    std::string form_csv;
    std::string format = "plain";
    int max_shifts = 50;
    bool assume_nondegenerate = false;
    int max_dim = 8;
    std::string command;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace((unsigned char)c)) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip_spaces(const std::string& s) {
    std::string r;
    for (char c : s)
        if (c != ' ') r += c;
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }
std::string int_str(const Int& n) { return n.get_str(); }

// JSON value for a big integer: a number when it fits, else a string
json int_json(const Int& n) {
    if (n.fits_slong_p()) return json((long)n.get_si());
    return json(n.get_str());
}

json rf_json(const RatFuncS& f) {
    json num = json::array();
    for (auto& c : f.num) num.push_back(rat_str(c));
    json den = json::array();
    for (auto& [p, m] : f.den) den.push_back({int_json(p.first), int_json(p.second), m});
    return json{{"num", num}, {"den", den}};
}

json poles_json(const RatFuncS& f) {
    json out = json::array();
    for (auto& [p, m] : rf_poles(f)) {
        Rat s0(-p.second, p.first);
        s0.canonicalize();
        out.push_back({{"N", int_json(p.first)},
                       {"nu", int_json(p.second)},
                       {"s0", rat_str(s0)},
                       {"order", m}});
    }
    return out;
}

json poleset_json(const PoleSet& ps) {
    json out = json::array();
    for (auto& [k, tags] : ps.pairs) {
        std::string prov;
        for (auto& t : tags) {
            if (!prov.empty()) prov += ",";
            prov += t;
        }
        out.push_back({int_json(k.first), int_json(k.second), prov});
    }
    return out;
}

json cp_json(const CycloProduct& z) {
    json out = json::array();
    for (auto& [a, e] : z.factors) out.push_back({int_json(a), e});
    return out;
}

json tree_json(const TreePtr& t) {
    json node;
    node["terminal"] = t->terminal;
    node["eps_eff"] = t->eps_eff;
    json N = json::array();
    for (int n : t->pair.N) N.push_back(n);
    node["N"] = N;
    node["epsilon"] = t->pair.epsilon;
    json nu = json::array();
    for (int n : t->pair.nu.nu) nu.push_back(n);
    node["nu"] = nu;
    node["shifts"] = (int)t->shifts.size();
    if (t->terminal) return node;
    json edges = json::array();
    for (int q = 0; q < t->path.r(); ++q) {
        const EdgeData& e = t->path.edges[q];
        json je;
        je["n1"] = int_json(e.n1);
        json b = json::array(), M = json::array();
        for (auto& x : e.b) b.push_back(int_json(x));
        for (auto& x : e.M) M.push_back(int_json(x));
        je["b"] = b;
        je["M"] = M;
        je["v"] = e.v;
        json roots = json::array();
        for (auto& rc : e.roots)
            roots.push_back({{"multiplicity", rc.multiplicity}, {"distinct", rc.distinct}});
        je["roots"] = roots;
        edges.push_back(je);
    }
    node["edges"] = edges;
    json children = json::array();
    for (auto& per_edge : t->children) {
        json row = json::array();
        for (auto& c : per_edge) row.push_back(tree_json(c));
        children.push_back(row);
    }
    node["children"] = children;
    return node;
}

void tree_plain(std::ostream& o, const TreePtr& t, int indent) {
    std::string pad(indent, ' ');
    o << pad << "node N=(";
    for (size_t j = 0; j < t->pair.N.size(); ++j) o << (j ? "," : "") << t->pair.N[j];
    o << ") eps=" << t->pair.epsilon;
    if (t->terminal) {
        o << " terminal eps_eff=" << t->eps_eff << "\n";
        return;
    }
    o << "\n";
    for (int q = 0; q < t->path.r(); ++q) {
        const EdgeData& e = t->path.edges[q];
        o << pad << "  edge " << q << ": n1=" << e.n1 << " b=(";
        for (size_t j = 0; j < e.b.size(); ++j) o << (j ? "," : "") << e.b[j];
        o << ") M=(";
        for (size_t j = 0; j < e.M.size(); ++j) o << (j ? "," : "") << e.M[j];
        o << ") v=" << e.v << "\n";
        for (auto& c : t->children[q]) tree_plain(o, c, indent + 4);
    }
}

std::string rf_latex(const RatFuncS& f) {
    std::ostringstream num;
    bool first = true;
    for (size_t i = f.num.size(); i-- > 0;) {
        if (f.num[i] == 0) continue;
        Rat c = f.num[i];
        if (!first) num << (c < 0 ? " - " : " + ");
        else if (c < 0) num << "-";
        if (c < 0) c = -c;
        first = false;
        if (c != 1 || i == 0) num << c;
        if (i >= 1) {
            num << "s";
            if (i > 1) num << "^{" << i << "}";
        }
    }
    if (first) return "0";
    std::ostringstream den;
    for (auto& [p, m] : f.den) {
        den << "(";
        if (p.first != 1) den << p.first;
        den << "s";
        if (p.second != 0) den << "+" << p.second;
        den << ")";
        if (m > 1) den << "^{" << m << "}";
    }
    if (f.den.empty()) return num.str();
    return "\\frac{" + num.str() + "}{" + den.str() + "}";
}

int run(const JobSpec& job) {
    std::vector<std::string> vars = split_csv(job.vars_csv);
    check(vars.size() >= 2, "InvalidInput", "need at least one x variable and z (--vars)");
    for (auto& v : vars) check(!v.empty(), "InvalidInput", "empty variable name in --vars");
    int d = (int)vars.size() - 1;
    check(d + 1 <= job.max_dim, "InvalidInput", "dimension exceeds --max-dim");

    FormExponents fe;
    if (job.form_csv.empty()) {
        fe.nu.assign(d, 1);
    } else {
        for (auto& t : split_csv(job.form_csv)) fe.nu.push_back(std::stoi(t));
        check((int)fe.nu.size() == d, "InvalidInput", "--form length must match x-variable count");
        for (int n : fe.nu) check(n >= 1, "InvalidInput", "form exponents must be >= 1");
    }

    std::string text = job.poly;
    if (!job.file.empty()) {
        std::ifstream in(job.file);
        check(in.good(), "InvalidInput", "cannot open --file " + job.file);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    check(!text.empty(), "InvalidInput", "no polynomial given");

    auto tower = std::make_shared<FieldTower>();
    MPoly h = parse(*tower, text, vars);

    json report;
    report["input"] = {{"poly", text}, {"vars", vars}, {"nu", fe.nu}};
    std::ostringstream plain;

    auto pair_for = [&]() {
        QOPair p = make_qopair(tower, h, fe);
        return good_coordinates(p, job.max_shifts).first;
    };

    if (job.command == "ztop" || job.command == "nondeg" || job.command == "validate") {
        RatFuncS zq, zn;
        bool have_q = false, have_n = false;
        if (job.command != "nondeg") {
            zq = ztop_qo(pair_for());
            have_q = true;
        }
        if (job.command != "ztop") {
            zn = ztop_nondeg(h, fe, job.assume_nondegenerate);
            have_n = true;
        }
        if (job.command == "validate") {
            check(rf_eq(zq, zn), "InternalError",
                  "recursion and nondegenerate formula disagree: " + rf_to_string(zq) +
                      " vs " + rf_to_string(zn));
            plain << "OK: recursion == nondegenerate formula\n";
        }
        const RatFuncS& z = have_q ? zq : zn;
        report["ztop"] = rf_json(z);
        report["poles"] = poles_json(z);
        if (job.command == "nondeg") {
            // the candidate-pole machinery needs the quasi-ordinary recursion;
            // nondeg also accepts inputs outside that class
            try {
                report["scp"] = poleset_json(strong_candidate_poles(make_qopair(tower, h, fe)));
            } catch (const Error&) {
            }
        } else {
            report["scp"] = poleset_json(strong_candidate_poles(make_qopair(tower, h, fe)));
        }
        if (job.command != "validate") {
            if (job.format == "latex")
                plain << rf_latex(z) << "\n";
            else
                plain << strip_spaces(rf_to_string(z)) << "\n";
        }
    } else if (job.command == "zmot") {
        QOPair p = make_qopair(tower, h, fe);
        MotivicExpr m = (p.d() == 1) ? zmot_curve(p) : zmot_nondeg_qo(p);
        report["zmot"] = me_to_string(m);
        plain << me_to_string(m) << "\n";
    } else if (job.command == "monodromy") {
        CycloProduct z = zeta_monodromy_qo(make_qopair(tower, h, fe));
        report["monodromy"] = cp_json(z);
        plain << cp_to_string(z) << "\n";
    } else if (job.command == "poles") {
        QOPair p = make_qopair(tower, h, fe);
        PoleSet cp = candidate_poles(p);
        PoleSet scp = strong_candidate_poles(p);
        RatFuncS z = ztop_qo(pair_for());
        report["ztop"] = rf_json(z);
        report["poles"] = poles_json(z);
        report["cp"] = poleset_json(cp);
        report["scp"] = poleset_json(scp);
        plain << "candidate pairs (N,nu | provenance):\n";
        for (auto& [k, tags] : cp.pairs) {
            plain << "  (" << k.first << "," << k.second << ")";
            plain << (scp.pairs.count(k) ? "" : "  [special, removed]") << " |";
            for (auto& t : tags) plain << " " << t;
            plain << "\n";
        }
        plain << "poles of ztop:\n";
        for (auto& [k, m] : rf_poles(z)) {
            Rat s0(-k.second, k.first);
            s0.canonicalize();
            plain << "  s = " << s0 << " (order " << m << ")\n";
        }
    } else if (job.command == "check") {
        auto vs = check_conjecture(make_qopair(tower, h, fe));
        json jv = json::array();
        for (auto& v : vs) {
            jv.push_back({{"N", int_json(v.pole.first)},
                          {"nu", int_json(v.pole.second)},
                          {"status", v.status}});
            Rat s0(-v.pole.second, v.pole.first);
            s0.canonicalize();
            plain << "s = " << s0 << ": " << v.status << " (" << v.witness << ")\n";
        }
        report["verdicts"] = jv;
    } else if (job.command == "tree") {
        TreePtr t = newton_tree(make_qopair(tower, h, fe));
        report["tree"] = tree_json(t);
        tree_plain(plain, t, 0);
    } else {
        fail("InvalidInput", "unknown command " + job.command);
    }

    if (job.format == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << plain.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact local zeta functions of quasi-ordinary polynomials"};
    app.require_subcommand(1);
    JobSpec job;
    for (const char* name : {"ztop", "nondeg", "zmot", "monodromy", "poles", "check",
                             "tree", "validate"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--vars", job.vars_csv, "comma-separated variables, last is z")
            ->required();
        sub->add_option("--form", job.form_csv, "comma-separated form exponents nu (default 1)");
        sub->add_option("--format", job.format, "plain | latex | json")
            ->check(CLI::IsMember({"plain", "latex", "json"}));
        sub->add_option("--max-shifts", job.max_shifts, "coordinate-shift budget");
        sub->add_flag("--assume-nondegenerate", job.assume_nondegenerate,
                      "skip the non-degeneracy certificate");
        sub->add_option("--max-dim", job.max_dim, "ambient dimension guard");
        sub->add_option("--file", job.file, "read the polynomial from a file");
        sub->add_option("polynomial", job.poly, "the polynomial");
        sub->callback([&job, name]() { job.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        return run(job);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "InternalError" || e.code() == "InvalidRoot" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
