#include "wcop/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "wcop/errors.hpp"

namespace wcop {

namespace {

// JSON has no infinities; keep them readable instead of null.
Json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

Json index_json(const MultiIndex& a) { return a.entries(); }

std::string index_text(const MultiIndex& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.dim(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

Json verdict_json(const PropertyVerdict& v) {
    Json out;
    out["value"] = to_string(v.value);
    Json rat = Json::array();
    for (const auto& e : v.rationale) rat.push_back({{"rule", e.rule}, {"citation", e.citation}, {"exact", e.exact}});
    out["rationale"] = rat;
    return out;
}

const std::set<std::string> kSources = {"worked-example", "derived", "elementary"};

}  // namespace

Json config_json(const ClassifierConfig& cfg) {
    Json out;
    out["alpha_max"] = cfg.probe.alpha_max;
    out["q_max"] = to_string(cfg.probe.q_max);
    out["n_max"] = cfg.probe.n_max;
    out["grid_J"] = cfg.probe.grid.J;
    out["evidence"] = cfg.evidence;
    out["disabled_rules"] = Json(std::vector<std::string>(cfg.disabled_rules.begin(), cfg.disabled_rules.end()));
    return out;
}

Json probe_json(const ProbeResult& p) {
    Json out;
    out["criterion"] = p.criterion;
    out["tag"] = to_string(p.tag);
    out["m_tag"] = p.m_tag ? Json(to_string(*p.m_tag)) : Json(nullptr);
    out["notes"] = p.notes;
    Json rows = Json::array();
    for (const auto& r : p.rows) {
        Json row;
        row["alpha"] = index_json(r.alpha);
        row["lambda"] = r.lambda ? index_json(*r.lambda) : Json(nullptr);
        row["p"] = to_string(r.p);
        row["n"] = r.n ? Json(*r.n) : Json(nullptr);
        row["q"] = r.q ? Json(to_string(*r.q)) : Json(nullptr);
        row["tag"] = to_string(r.tag);
        row["log_sup"] = r.log_sup ? number(*r.log_sup) : Json(nullptr);
        Json bands = Json::array();
        for (const auto& b : r.bands)
            bands.push_back({{"band", b.band}, {"log2_radius", number(b.log2_radius)}, {"running_max", number(b.running_max)}});
        row["bands"] = bands;
        rows.push_back(row);
    }
    out["rows"] = rows;
    return out;
}

Json report_json(const SymbolPair& sp, const ClassifierConfig& cfg, const ClassificationReport& r) {
    Json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    Json input;
    input["dim"] = sp.dim();
    input["psi"] = sp.psi.to_string();
    Json phi = Json::array();
    for (const auto& c : sp.phi) phi.push_back(c.to_string());
    input["phi"] = phi;
    input["psi_phase"] = sp.psi_phase;
    doc["input"] = input;
    doc["config"] = config_json(cfg);
    Json verdicts;
    for (const auto& [name, v] : r.properties()) verdicts[name] = verdict_json(*v);
    doc["verdicts"] = verdicts;
    Json ev = Json::array();
    for (const auto& p : r.evidence) ev.push_back(probe_json(p));
    doc["evidence"] = ev;
    return doc;
}

std::string report_text(const SymbolPair& sp, const ClassificationReport& r) {
    std::ostringstream os;
    os << "psi = " << sp.psi.to_string() << (sp.psi_phase ? "  (with unit complex phase)" : "") << "\n";
    os << "phi = ";
    for (std::size_t i = 0; i < sp.phi.size(); ++i) os << (i ? ", " : "") << sp.phi[i].to_string();
    os << "\n\n";
    os << std::left << std::setw(30) << "property" << std::setw(11) << "verdict" << "rule\n";
    for (const auto& [name, v] : r.properties()) {
        os << std::setw(30) << name << std::setw(11) << to_string(v->value);
        for (std::size_t i = 0; i < v->rationale.size(); ++i) {
            if (i) os << std::setw(41) << "";
            os << v->rationale[i].rule << (v->rationale[i].exact ? "" : " (evidence)") << "\n";
        }
        if (v->rationale.empty()) os << "-\n";
    }
    os << "\nrationale\n";
    for (const auto& [name, v] : r.properties())
        for (const auto& e : v->rationale) os << "  " << e.rule << ": " << e.citation << "\n";
    if (!r.evidence.empty()) {
        os << "\nevidence\n";
        for (const auto& p : r.evidence) {
            os << "  " << std::setw(12) << p.criterion << to_string(p.tag);
            if (p.m_tag) os << "  (m: " << to_string(*p.m_tag) << ")";
            os << "\n";
            for (const auto& n : p.notes) os << "      " << n << "\n";
        }
    }
    return os.str();
}

std::string probe_text(const ProbeResult& p) {
    std::ostringstream os;
    os << "criterion: " << p.criterion << "\nresult:    " << to_string(p.tag);
    if (p.m_tag) os << "  (m: " << to_string(*p.m_tag) << ")";
    os << "\n";
    for (const auto& n : p.notes) os << "  " << n << "\n";
    if (p.rows.empty()) return os.str();
    os << "\n" << std::left << std::setw(10) << "alpha" << std::setw(10) << "lambda" << std::setw(6) << "p"
       << std::setw(5) << "n" << std::setw(8) << "q" << std::setw(16) << "tag" << "last bands (log2 r: running max)\n";
    for (const auto& r : p.rows) {
        os << std::setw(10) << index_text(r.alpha) << std::setw(10) << (r.lambda ? index_text(*r.lambda) : "-")
           << std::setw(6) << to_string(r.p) << std::setw(5) << (r.n ? std::to_string(*r.n) : "-") << std::setw(8)
           << (r.q ? to_string(*r.q) : "-") << std::setw(16) << to_string(r.tag);
        std::size_t from = r.bands.size() > 3 ? r.bands.size() - 3 : 0;
        for (std::size_t i = from; i < r.bands.size(); ++i)
            os << (i > from ? "  " : "") << fmt(r.bands[i].log2_radius) << ": " << fmt(r.bands[i].running_max);
        if (r.bands.empty()) os << (r.tag == GrowthTag::Finite || r.tag == GrowthTag::Infinite ? "exact" : "-");
        os << "\n";
    }
    return os.str();
}

Json exp_ineq_json(const ExpIneqResult& r) {
    Json out;
    out["criterion"] = "exp-ineq";
    out["holds"] = r.all_hold_from_n_alpha;
    Json na;
    for (const auto& [a, n] : r.n_alpha) na[std::to_string(a)] = n ? Json(*n) : Json(nullptr);
    out["n_alpha"] = na;
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"alpha", row.alpha},
                        {"n", row.n},
                        {"points", row.points},
                        {"violations", row.violations},
                        {"max_margin", number(row.max_margin)}});
    out["rows"] = rows;
    return out;
}

std::string exp_ineq_text(const ExpIneqResult& r) {
    std::ostringstream os;
    os << "criterion: exp-ineq\nresult:    " << (r.all_hold_from_n_alpha ? "holds" : "fails") << "\n";
    for (const auto& [a, n] : r.n_alpha)
        os << "  alpha=" << a << ": n_alpha = " << (n ? std::to_string(*n) : "none") << "\n";
    os << "\n" << std::left << std::setw(7) << "alpha" << std::setw(5) << "n" << std::setw(8) << "points"
       << std::setw(12) << "violations" << "max log(lhs/rhs)\n";
    for (const auto& row : r.rows)
        os << std::setw(7) << row.alpha << std::setw(5) << row.n << std::setw(8) << row.points << std::setw(12)
           << row.violations << fmt(row.max_margin) << "\n";
    return os.str();
}

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> corpus = [] {
        const std::string no_fixed =
            "deg phi >= 2 without real fixed points gives power boundedness for every nonzero polynomial weight";
        const std::string contraction = "a contracting affine symbol is not power bounded for a nonzero polynomial weight";
        const std::string translation = "for phi = x+b, b != 0, and constant psi = c: power bounded iff |c| < 1";
        const std::string unit_shift = "the unweighted translation is m-topologizable but not power bounded";
        const std::string affine_top = "affine phi with a nonconstant polynomial weight is not topologizable";
        const std::string sqrt_sym = "for phi = sqrt(1+x^2) and polynomial psi: power bounded iff psi = c with |c| <= 1";
        const std::string exp_exp = "psi = phi = exp acts on S and is power bounded via the exponential tower bound";
        const std::string sc = "weak supercyclicity forces phi = x+b with b != 0 and a zero-free psi";
        const std::string sc_open = "translations with zero-free weights are not excluded";
        const std::string fixed = "deg phi >= 2 with a real fixed point is never power bounded";
        const std::string mult = "a polynomial weight with a polynomial symbol always acts on S";
        const std::string constant = "a constant symbol maps every f to a multiple of psi, which is not in S unless psi = 0";
        const std::string scalar = "the identity symbol with psi = c is c times the identity";
        const std::string uw = "psi * (f o phi) lies in S for every Schwartz psi iff every partial derivative of phi is in O_M";
        std::vector<CorpusEntry> c = {
            {"quad-pb-const", "1", "x^2+1", 1, "power_bounded", Verdict::Yes, "worked-example", no_fixed},
            {"quad-pb-poly", "x^3-2", "x^2+1", 1, "power_bounded", Verdict::Yes, "worked-example", no_fixed},
            {"quad-itz-poly", "x^3-2", "x^2+1", 1, "iterates_to_zero", Verdict::Yes, "worked-example", no_fixed},
            {"quad-ume-poly", "x^3-2", "x^2+1", 1, "uniformly_mean_ergodic", Verdict::Yes, "worked-example", no_fixed},
            {"quad-itz-const", "7", "x^2+1", 1, "iterates_to_zero", Verdict::Yes, "worked-example", no_fixed},
            {"quad-ume-const", "7", "x^2+1", 1, "uniformly_mean_ergodic", Verdict::Yes, "worked-example", no_fixed},
            {"half-pb-const", "1", "1/2*x", 1, "power_bounded", Verdict::No, "worked-example", contraction},
            {"half-pb-poly", "x^2+1", "1/2*x", 1, "power_bounded", Verdict::No, "worked-example", contraction},
            {"shift-mtop", "1", "x+1", 1, "m_topologizable", Verdict::Yes, "worked-example", unit_shift},
            {"shift-pb", "1", "x+1", 1, "power_bounded", Verdict::No, "worked-example", unit_shift},
            {"shift-half", "1/2", "x+1", 1, "power_bounded", Verdict::Yes, "worked-example", translation},
            {"shift-one", "1", "x-3", 1, "power_bounded", Verdict::No, "worked-example", translation},
            {"shift-two", "2", "x+1", 1, "power_bounded", Verdict::No, "worked-example", translation},
            {"shift-neg-half", "-1/2", "x-3", 1, "power_bounded", Verdict::Yes, "worked-example", translation},
            {"affine-top-shift", "x", "x+1", 1, "topologizable", Verdict::No, "worked-example", affine_top},
            {"affine-top-dilation", "x^2+1", "2*x-1", 1, "topologizable", Verdict::No, "worked-example", affine_top},
            {"affine-top-half", "x", "1/2*x", 1, "topologizable", Verdict::No, "worked-example", affine_top},
            {"sqrt-half", "1/2", "sqrt(1+x^2)", 1, "power_bounded", Verdict::Yes, "worked-example", sqrt_sym},
            {"sqrt-one", "1", "sqrt(1+x^2)", 1, "power_bounded", Verdict::Yes, "worked-example", sqrt_sym},
            {"sqrt-two", "2", "sqrt(1+x^2)", 1, "power_bounded", Verdict::No, "worked-example", sqrt_sym},
            {"sqrt-x", "x", "sqrt(1+x^2)", 1, "power_bounded", Verdict::No, "worked-example", sqrt_sym},
            {"exp-acts", "exp(x)", "exp(x)", 1, "acts_on_S", Verdict::Yes, "worked-example", exp_exp},
            {"exp-pb", "exp(x)", "exp(x)", 1, "power_bounded", Verdict::Yes, "worked-example", exp_exp},
            {"sc-square", "1", "x^2", 1, "weak_supercyclicity_possible", Verdict::No, "worked-example", sc},
            {"sc-quad", "1", "x^2+1", 1, "weak_supercyclicity_possible", Verdict::No, "worked-example", sc},
            {"sc-cubic", "1", "x^3-x", 1, "weak_supercyclicity_possible", Verdict::No, "worked-example", sc},
            {"sc-affine", "1", "2*x+1", 1, "weak_supercyclicity_possible", Verdict::No, "worked-example", sc},
            {"sc-shift", "x^2+1", "x+1", 1, "weak_supercyclicity_possible", Verdict::Unknown, "worked-example", sc_open},
            {"sc-shift-const", "3", "x+1", 1, "weak_supercyclicity_possible", Verdict::Unknown, "worked-example", sc_open},
            {"fixed-square", "1", "x^2", 1, "power_bounded", Verdict::No, "derived", fixed},
            {"fixed-square-poly", "x^4-x", "x^2", 1, "power_bounded", Verdict::No, "derived", fixed},
            {"quartic-pb", "1", "x^4+x+3", 1, "power_bounded", Verdict::Yes, "derived", no_fixed},
            {"quartic-pb-poly", "x-5", "x^4+x+3", 1, "power_bounded", Verdict::Yes, "derived", no_fixed},
            {"sc-zero", "x", "x+1", 1, "weak_supercyclicity_possible", Verdict::No, "derived", sc},
            {"poly-acts", "x^3", "x^5-x", 1, "acts_on_S", Verdict::Yes, "elementary", mult},
            {"constant-acts", "1", "2", 1, "acts_on_S", Verdict::No, "elementary", constant},
            {"identity-pb", "1", "x", 1, "power_bounded", Verdict::Yes, "elementary", scalar},
            {"identity-itz", "1", "x", 1, "iterates_to_zero", Verdict::No, "elementary", scalar},
            {"identity-itz-third", "1/3", "x", 1, "iterates_to_zero", Verdict::Yes, "elementary", scalar},
            {"uw-poly", "1", "x^3-x", 1, "universal_schwartz_weights", Verdict::Yes, "elementary", uw},
            {"uw-exp", "exp(x)", "exp(x)", 1, "universal_schwartz_weights", Verdict::No, "elementary", uw},
        };
        return c;
    }();
    return corpus;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidRange(std::string("corpus is not valid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("entries")) doc = doc["entries"];
    if (!doc.is_array()) throw InvalidRange("corpus must be a JSON array of entries");
    if (doc.empty()) throw InvalidRange("corpus is empty");
    std::vector<CorpusEntry> out;
    for (const auto& e : doc) {
        if (!e.is_object()) throw InvalidRange("corpus entry is not an object");
        try {
            CorpusEntry c;
            c.id = e.at("id").get<std::string>();
            c.psi = e.at("psi").get<std::string>();
            c.phi = e.at("phi").get<std::string>();
            c.dim = e.value("dim", std::size_t{1});
            c.property = e.at("property").get<std::string>();
            c.expected = verdict_from_string(e.at("expected").get<std::string>());
            c.source = e.value("source", std::string());
            c.citation = e.value("citation", std::string());
            out.push_back(std::move(c));
        } catch (const Json::exception& ex) {
            throw InvalidRange(std::string("malformed corpus entry: ") + ex.what());
        }
    }
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidRange("cannot read corpus file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

Json corpus_json(const std::vector<CorpusEntry>& entries) {
    Json out = Json::array();
    for (const auto& c : entries)
        out.push_back({{"id", c.id},
                       {"psi", c.psi},
                       {"phi", c.phi},
                       {"dim", c.dim},
                       {"property", c.property},
                       {"expected", to_string(c.expected)},
                       {"source", c.source},
                       {"citation", c.citation}});
    return out;
}

CorpusOutcome run_corpus(const std::vector<CorpusEntry>& entries, const ClassifierConfig& cfg) {
    if (entries.empty()) throw InvalidRange("corpus is empty");
    for (const auto& e : entries) {
        if (!kSources.count(e.source)) throw InvalidRange("corpus entry " + e.id + " lacks a valid source");
        if (e.citation.empty()) throw InvalidRange("corpus entry " + e.id + " lacks a citation");
    }
    CorpusOutcome out;
    // one report per distinct input
    std::map<std::tuple<std::string, std::string, std::size_t>, ClassificationReport> reports;
    std::map<std::tuple<std::string, std::string, std::size_t>, std::string> failures;
    for (const auto& e : entries) {
        ++out.entries;
        auto key = std::make_tuple(e.psi, e.phi, e.dim);
        if (!reports.count(key) && !failures.count(key)) {
            try {
                reports[key] = full_report(SymbolPair::parse(e.psi, e.phi, e.dim), cfg);
            } catch (const Error& ex) {
                failures[key] = ex.what();
            }
        }
        if (failures.count(key)) {
            out.mismatches.push_back({e.id, e.property, e.expected, Verdict::Unknown, failures[key]});
            continue;
        }
        const PropertyVerdict* v = nullptr;
        try {
            v = &reports[key].property(e.property);
        } catch (const InvalidRange& ex) {
            out.mismatches.push_back({e.id, e.property, e.expected, Verdict::Unknown, ex.what()});
            continue;
        }
        if (v->value == e.expected) {
            ++out.passed;
            continue;
        }
        std::string rules;
        for (const auto& r : v->rationale) rules += (rules.empty() ? "" : ", ") + r.rule;
        out.mismatches.push_back({e.id, e.property, e.expected, v->value, rules});
    }
    return out;
}

std::string corpus_text(const CorpusOutcome& out) {
    std::ostringstream os;
    os << "corpus: " << out.passed << "/" << out.entries << " entries match\n";
    if (out.mismatches.empty()) return os.str();
    os << "\n" << std::left << std::setw(22) << "id" << std::setw(30) << "property" << std::setw(11) << "expected"
       << std::setw(11) << "actual" << "detail\n";
    for (const auto& m : out.mismatches)
        os << std::setw(22) << m.id << std::setw(30) << m.property << std::setw(11) << to_string(m.expected)
           << std::setw(11) << to_string(m.actual) << m.detail << "\n";
    return os.str();
}

}  // namespace wcop
