#include "wcop/cli.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"
#include "wcop/errors.hpp"
#include "wcop/report.hpp"

namespace wcop {

namespace {

struct Options {
    std::string psi = "1";
    std::string phi;
    std::size_t dim = 1;
    std::string format = "text";
    unsigned alpha_max = 4;
    std::string q_max = "16";
    unsigned n_max = 8;
    int grid_J = 512;
    bool phase = false;
    bool no_evidence = false;
    std::vector<std::string> disabled;

    std::string criterion;
    std::string alpha, lambda, p, q, n, xrange, step = "1/4";

    std::string file;
    bool dump = false;
};

std::pair<std::string, std::string> split_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) throw InvalidRange("expected a range a..b, got '" + s + "'");
    return {s.substr(0, pos), s.substr(pos + 2)};
}

unsigned parse_unsigned(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InvalidRange("expected a nonnegative integer, got '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

MultiIndex parse_index(const std::string& s, std::size_t dim) {
    std::vector<unsigned> e;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
        e.push_back(parse_unsigned(part));
    }
    if (e.size() != dim) throw DimensionMismatch("multi-index '" + s + "' needs " + std::to_string(dim) + " entries");
    return MultiIndex(e);
}

ClassifierConfig make_config(const Options& o) {
    ClassifierConfig cfg;
    cfg.probe.alpha_max = o.alpha_max;
    cfg.probe.q_max = parse_rational(o.q_max);
    if (cfg.probe.q_max < 0) throw InvalidRange("--q-max must be nonnegative");
    if (o.n_max < 1) throw InvalidRange("--n-max must be at least 1");
    cfg.probe.n_max = o.n_max;
    if (o.grid_J < 1) throw InvalidRange("--grid-J must be positive");
    cfg.probe.grid.J = o.grid_J;
    cfg.evidence = !o.no_evidence;
    cfg.disabled_rules.insert(o.disabled.begin(), o.disabled.end());
    return cfg;
}

Json header() { return Json{{"tool", kToolName}, {"version", kToolVersion}}; }

int do_classify(const Options& o, std::ostream& out) {
    if (o.phi.empty()) throw InvalidRange("--phi is required");
    ClassifierConfig cfg = make_config(o);
    SymbolPair sp = SymbolPair::parse(o.psi, o.phi, o.dim, o.phase);
    ClassificationReport r = full_report(sp, cfg);
    if (o.format == "json") {
        out << report_json(sp, cfg, r).dump(2) << "\n";
    } else {
        out << report_text(sp, r);
    }
    return kExitOk;
}

int do_check(const Options& o, std::ostream& out) {
    const std::string& c = o.criterion;
    ClassifierConfig cfg = make_config(o);
    Json doc = header();
    doc["criterion"] = c;
    if (c == "exp-ineq") {
        ExpIneqOptions eo;
        if (!o.alpha.empty()) eo.alphas = {parse_unsigned(o.alpha)};
        eo.n_max = o.n_max;
        if (!o.n.empty()) {
            auto [a, b] = split_range(o.n);
            eo.n_min = parse_unsigned(a);
            eo.n_max = parse_unsigned(b);
        }
        if (!o.xrange.empty()) {
            auto [a, b] = split_range(o.xrange);
            eo.x_min = parse_rational(a);
            eo.x_max = parse_rational(b);
        }
        eo.step = parse_rational(o.step);
        ExpIneqResult r = check_exp_inequality(eo);
        if (o.format == "json") {
            doc["config"] = {{"n_min", eo.n_min},
                             {"n_max", eo.n_max},
                             {"x_min", to_string(eo.x_min)},
                             {"x_max", to_string(eo.x_max)},
                             {"step", to_string(eo.step)}};
            doc["result"] = exp_ineq_json(r);
            out << doc.dump(2) << "\n";
        } else {
            out << exp_ineq_text(r);
        }
        return r.all_hold_from_n_alpha ? kExitOk : kExitMismatch;
    }

    static const std::set<std::string> known = {"acts", "pb-a", "pb-b", "top-a", "top-b", "smalldecay"};
    if (!known.count(c)) throw InvalidRange("unknown criterion '" + c + "'");
    if (o.phi.empty()) throw InvalidRange("--phi is required");
    SymbolPair sp = SymbolPair::parse(o.psi, o.phi, o.dim, o.phase);
    ProbeOptions po = cfg.probe;
    if (!o.alpha.empty()) po.alpha = parse_index(o.alpha, sp.dim());
    if (!o.lambda.empty()) {
        if (c != "acts") throw InvalidRange("--lambda only applies to the acts criterion");
        po.lambda = parse_index(o.lambda, sp.dim());
    }
    if (!o.p.empty()) po.ps = {parse_rational(o.p)};
    if (!o.n.empty()) {
        auto [a, b] = split_range(o.n);
        po.n_min = parse_unsigned(a);
        po.n_max = parse_unsigned(b);
        if (po.n_min < 1 || po.n_min > po.n_max) throw InvalidRange("--n needs 1 <= a <= b");
    }

    ProbeResult r;
    if (c == "smalldecay") {
        r = probe_small_decay(sp.psi, sp.phi, po);
    } else if (!o.q.empty()) {
        r = probe_at_q(sp.psi, sp.phi, c, parse_rational(o.q), po);
    } else if (c == "acts") {
        r = probe_acts(sp.psi, sp.phi, po);
    } else {
        auto cond = c.back() == 'a' ? IterateCondition::Weights : IterateCondition::Symbol;
        auto mode = c.rfind("pb", 0) == 0 ? IterateMode::PowerBounded : IterateMode::Topologizable;
        r = probe_iterates(sp.psi, sp.phi, cond, mode, po);
    }
    if (o.format == "json") {
        Json input{{"dim", sp.dim()}, {"psi", sp.psi.to_string()}};
        Json phi = Json::array();
        for (const auto& e : sp.phi) phi.push_back(e.to_string());
        input["phi"] = phi;
        doc["input"] = input;
        doc["config"] = config_json(cfg);
        doc["result"] = probe_json(r);
        out << doc.dump(2) << "\n";
    } else {
        out << "psi = " << sp.psi.to_string() << "\nphi = ";
        for (std::size_t i = 0; i < sp.phi.size(); ++i) out << (i ? ", " : "") << sp.phi[i].to_string();
        out << "\n" << probe_text(r);
    }
    return kExitOk;
}

int do_corpus(const Options& o, std::ostream& out) {
    std::vector<CorpusEntry> entries = o.file.empty() ? builtin_corpus() : load_corpus(o.file);
    if (o.dump) {
        out << corpus_json(entries).dump(2) << "\n";
        return kExitOk;
    }
    CorpusOutcome res = run_corpus(entries, make_config(o));
    if (o.format == "json") {
        Json doc = header();
        doc["entries"] = res.entries;
        doc["passed"] = res.passed;
        Json mm = Json::array();
        for (const auto& m : res.mismatches)
            mm.push_back({{"id", m.id},
                          {"property", m.property},
                          {"expected", to_string(m.expected)},
                          {"actual", to_string(m.actual)},
                          {"detail", m.detail}});
        doc["mismatches"] = mm;
        out << doc.dump(2) << "\n";
    } else {
        out << corpus_text(res);
    }
    return res.mismatches.empty() ? kExitOk : kExitMismatch;
}

void add_shared(CLI::App* app, Options& o, bool symbols) {
    if (symbols) {
        app->add_option("--psi", o.psi, "weight expression")->capture_default_str();
        app->add_option("--phi", o.phi, "symbol components, comma separated");
        app->add_option("--dim", o.dim, "number of variables")->capture_default_str();
        app->add_flag("--phase", o.phase, "psi carries a nontrivial unit complex factor");
    }
    app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app->add_option("--alpha-max", o.alpha_max, "largest derivative order probed")->capture_default_str();
    app->add_option("--q-max", o.q_max, "largest q tried")->capture_default_str();
    app->add_option("--n-max", o.n_max, "largest iterate probed")->capture_default_str();
    app->add_option("--grid-J", o.grid_J, "grid extends to 2^(J/8)")->capture_default_str();
    app->add_flag("--no-evidence", o.no_evidence, "skip grid probes when no exact rule applies");
    app->add_option("--disable-rule", o.disabled, "rule id that must not fire (repeatable)");
}

// Values of range flags may start with '-', which the parser would take for a flag.
std::vector<std::string> glue_ranges(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if ((a == "--xrange" || a == "--n" || a == "--p" || a == "--q") && i + 1 < args.size()) {
            out.push_back(a + "=" + args[++i]);
        } else {
            out.push_back(a);
        }
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Weighted composition operators on the Schwartz space", "wcop"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto* classify = app.add_subcommand("classify", "classify all properties of C_{psi,phi}");
    add_shared(classify, o, true);

    auto* check = app.add_subcommand("check", "run one targeted probe");
    check->add_option("criterion", o.criterion, "acts | pb-a | pb-b | top-a | top-b | smalldecay | exp-ineq")
        ->required();
    add_shared(check, o, true);
    check->add_option("--alpha", o.alpha, "derivative multi-index, e.g. 1 or 1,0");
    check->add_option("--lambda", o.lambda, "lambda multi-index (acts only)");
    check->add_option("--p", o.p, "polynomial weight exponent");
    check->add_option("--q", o.q, "fixed q instead of searching");
    check->add_option("--n", o.n, "iterate range a..b");
    check->add_option("--xrange", o.xrange, "x range a..b (exp-ineq)");
    check->add_option("--step", o.step, "grid step (exp-ineq)")->capture_default_str();

    auto* corpus = app.add_subcommand("corpus", "run the regression corpus of known verdicts");
    add_shared(corpus, o, false);
    corpus->add_option("--file", o.file, "JSON corpus file instead of the built-in one");
    corpus->add_flag("--dump", o.dump, "print the corpus as JSON and exit");

    std::vector<std::string> args = glue_ranges(raw_args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*classify) return do_classify(o, out);
        if (*check) return do_check(o, out);
        return do_corpus(o, out);
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace wcop
