#include "wcop/classifier.hpp"

#include <algorithm>

#include "wcop/errors.hpp"
#include "wcop/rootcheck.hpp"

namespace wcop {

namespace {

// Rule ids and the facts they apply.
namespace cite {
const char* kZeroWeight = "psi = 0 gives the zero operator, which acts and has every boundedness property";
const char* kNotActing = "the operator does not act on S, so it has no operator property there";
const char* kPhase = "only |psi| enters the criteria; the unit complex factor of psi is ignored";
const char* kPolyMultiplier =
    "for a nonconstant polynomial symbol in one variable, C_{psi,phi} acts on S iff psi is a multiplier (O_M); "
    "polynomials are multipliers";
const char* kExpFreeMultiplier =
    "for a nonconstant polynomial symbol in one variable, C_{psi,phi} acts on S iff psi is in O_M; functions built "
    "from polynomials and square roots of positive polynomials are in O_M";
const char* kConstantSymbol =
    "for constant phi = b, C_{psi,phi} f = f(b) psi, so the operator acts iff psi is a Schwartz function; a nonzero "
    "polynomial is not";
const char* kExpExpActs = "C_{exp,exp} acts continuously on S although neither the weight nor the symbol does alone";
const char* kSqrtActs = "sqrt(1+x^2) is a symbol for S and polynomial weights are admissible multipliers for it";
const char* kActsGrid =
    "C_{psi,phi} acts iff for all alpha, p there is q with sup (1+|x|)^p / (1+|phi|)^q |F_{alpha,lambda}| finite; "
    "checked on a grid for |alpha| <= alpha_max";

const char* kPbNoFixed =
    "for a polynomial symbol of degree >= 2 without fixed points, C_{psi,phi} is power bounded for every psi in O_M";
const char* kPbFixed =
    "a polynomial symbol of degree >= 2 with a fixed point gives a non power bounded C_phi, and power boundedness of "
    "C_{psi,phi} with psi of small decay forces that of C_phi; nonzero polynomials have small decay";
const char* kPbTranslation =
    "for phi = x+b, b != 0, and polynomial psi, C_{psi,phi} is power bounded iff psi is a constant of modulus < 1";
const char* kPbAffine = "for phi = ax+b with |a| not in {0,1}, C_{psi,phi} is not power bounded for nonzero polynomial psi";
const char* kPbIdentity =
    "the multiplication operator is power bounded iff (psi^n) is bounded in O_M; for a polynomial this forces a "
    "constant of modulus <= 1 (polynomial specialisation)";
const char* kPbReflection =
    "for phi = -x+b, C_{psi,phi} is power bounded iff ((psi (psi o phi))^n) is bounded in O_M; for a polynomial "
    "this forces a constant of modulus <= 1 (polynomial specialisation)";
const char* kPbSqrt = "for phi = sqrt(1+x^2) and polynomial psi, C_{psi,phi} is power bounded iff psi = c with |c| <= 1";
const char* kPbExpExp = "C_{exp,exp} is power bounded on S";
const char* kPbGridA =
    "power boundedness requires: for all p, alpha some q with sup_n sup_x (1+|x|)^p / (1+|phi_n|)^q |(psi^n)^(alpha)| "
    "finite; grid evidence";
const char* kPbGridB =
    "together with the weight condition, power boundedness follows from: for all alpha some q with "
    "sup_n sup_x |phi_n^(alpha)| / (1+|phi_n|)^q finite; grid evidence";
const char* kPbGridBNecessary = "for psi of small decay, the symbol condition is also necessary; grid evidence";

const char* kTopFromPb = "power bounded operators are m-topologizable with constant scalars a_n = 1";
const char* kTopComposition =
    "C_phi with polynomial phi is topologizable iff it acts, i.e. deg(phi) >= 1; a constant weight c != 0 only "
    "rescales the iterates";
const char* kTopAffineNonconst =
    "for affine phi = ax+b, a != 0, and a nonconstant polynomial psi, C_{psi,phi} is not topologizable";
const char* kTopAffineConst =
    "for affine phi and constant psi the ratios sup_x (1+|x|)/(1+|phi_n(x)|) grow at most geometrically in n, so "
    "C_{psi,phi} is m-topologizable";
const char* kTopSqrt =
    "for phi = sqrt(1+x^2) and polynomial psi, topologizability and m-topologizability both hold iff psi is constant";
const char* kTopImpliesM = "m-topologizable operators are topologizable";
const char* kTopOpen = "not settled for polynomial symbols of degree >= 2 with fixed points and nonconstant weights";
const char* kTopGrid =
    "(m-)topologizable iff for all p, alpha some q with sup_x (1+|x|)^p / (1+|phi_n|)^q |(psi^n)^(alpha)| finite "
    "for every n (resp. bounded by C M^n), together with the symbol condition; grid evidence";

const char* kItzNoFixed =
    "for a polynomial symbol of degree >= 2 without fixed points, (C_{psi,phi}^n) converges to 0 in L_b(S) for every "
    "psi in O_M";
const char* kItzTranslation = "for phi = x+b and psi = c with |c| < 1, (C_{psi,phi}^n) converges to 0 in L_b(S)";
const char* kItzScalar =
    "for phi = x or phi = -x+b and psi = c, C_{psi,phi}^2 = c^2 id, so the iterates tend to 0 iff |c| < 1";
const char* kActsFromOperator = "each exact operator rule presupposes, and establishes, that C_{psi,phi} maps S into S";
const char* kItzNeedsPb = "a sequence of operators converging in L_b(S) is equicontinuous, so convergence forces power boundedness";
const char* kItzGrid = "convergence to 0 forces power boundedness; evidence against power boundedness";

const char* kErgFromPb = "a power bounded operator on a Montel space is uniformly mean ergodic";
const char* kCesFromPb = "a power bounded operator is Cesaro bounded";
const char* kErgComposition =
    "for a polynomial symbol of degree >= 2, C_phi is (uniformly) mean ergodic iff it is Cesaro bounded iff phi has "
    "no fixed points";
const char* kErgGrid = "follows from power boundedness; grid evidence";

const char* kScZero = "if psi(x0) = 0 the range of C_{psi,phi} lies in the kernel of delta_{x0}";
const char* kScConstant = "for constant phi the range of C_{psi,phi} is the span of psi";
const char* kScNonInjective =
    "if phi(x0) = phi(x1) with x0 != x1 the range lies in the kernel of a nonzero combination of delta_{x0} and "
    "delta_{x1}";
const char* kScIdentity = "for phi = x every delta_x is an eigenvector of the adjoint";
const char* kScAffine = "for phi = ax+b with a != 1 the adjoint has two eigenvalues";
const char* kScTwoFixed = "two fixed points of phi give two independent eigenvectors of the adjoint";
const char* kScOddOneFixed =
    "for phi of odd degree >= 3 with a single fixed point and zero-free psi in O_M, the iterates grow too fast for a "
    "weakly dense projective orbit";
const char* kScTranslation =
    "a polynomial symbol admitting weak supercyclicity must be a translation x+b, b != 0; this case is not excluded";

const char* kUwExpFree =
    "C_{psi,phi} acts on S for every Schwartz psi iff every partial derivative of phi is in O_M; derivatives of "
    "functions built from polynomials and square roots of positive polynomials are in O_M";
const char* kUwExp = "phi' = exp is not in O_M, so some Schwartz weight psi gives no operator on S";
const char* kUwGrid = "derivatives of phi compared against polynomial growth on a grid";
}  // namespace cite

struct Shape {
    enum class Phi { Constant, Identity, Translation, Reflection, Affine, Higher, Sqrt, Exp, Other };
    Phi phi = Phi::Other;
    std::optional<Polynomial> phi_poly;
    unsigned phi_deg = 0;
    Rational a = 0, b = 0;
    std::size_t fixed_points = 0;

    std::optional<Polynomial> psi_poly;
    bool psi_zero = false;
    bool psi_const = false;
    Rational psi_abs = 0;
    bool psi_exp = false;
    bool psi_exp_free = false;
    /// psi has a real zero (true), none (false) or undecided.
    std::optional<bool> psi_has_zero;
};

Shape analyse(const SymbolPair& sp) {
    Shape s;
    const Expr& psi = sp.psi;
    s.psi_poly = psi.as_polynomial();
    s.psi_zero = psi.is_zero();
    s.psi_exp_free = psi.is_exp_free();
    if (s.psi_poly && s.psi_poly->is_constant()) {
        s.psi_const = true;
        s.psi_abs = abs(s.psi_poly->constant_term());
    }
    if (sp.dim() != 1) return s;
    Expr x = Expr::variable(1, 0);
    s.psi_exp = psi == Expr::exp(x);
    if (s.psi_zero) {
        s.psi_has_zero = true;
    } else if (s.psi_poly) {
        s.psi_has_zero = has_real_root(*s.psi_poly);
    } else if (psi.groups().size() == 1) {
        // radicals, denominators and exponentials are positive: only the numerator vanishes
        auto num = psi.groups().front().num;
        s.psi_has_zero = has_real_root(num);
    }

    const Expr& phi = sp.phi[0];
    s.phi_poly = phi.as_polynomial();
    if (s.phi_poly) {
        const Polynomial& f = *s.phi_poly;
        s.phi_deg = f.is_zero() ? 0 : *f.degree();
        if (s.phi_deg == 0) {
            s.phi = Shape::Phi::Constant;
            s.b = f.constant_term();
        } else if (s.phi_deg == 1) {
            s.a = f.coefficient(MultiIndex{1});
            s.b = f.constant_term();
            if (s.a == 1) s.phi = s.b == 0 ? Shape::Phi::Identity : Shape::Phi::Translation;
            else if (s.a == -1) s.phi = Shape::Phi::Reflection;
            else s.phi = Shape::Phi::Affine;
        } else {
            s.phi = Shape::Phi::Higher;
            s.fixed_points = has_fixed_point(f).second.count;
        }
    } else if (phi == Expr::sqrt_poly(Polynomial::from_coefficients({1, 0, 1}))) {
        s.phi = Shape::Phi::Sqrt;
    } else if (phi == Expr::exp(x)) {
        s.phi = Shape::Phi::Exp;
    }
    return s;
}

class Rules {
public:
    Rules(const ClassifierConfig& cfg) : cfg_(cfg) {}

    bool on(const std::string& id) const { return !cfg_.disabled_rules.count(id); }

    static PropertyVerdict make(Verdict v, const std::string& id, const char* why, bool exact = true) {
        PropertyVerdict pv;
        pv.value = v;
        pv.rationale.push_back({id, why, exact});
        return pv;
    }

private:
    const ClassifierConfig& cfg_;
};

void add_phase_note(const SymbolPair& sp, PropertyVerdict& v) {
    if (sp.psi_phase && v.value != Verdict::Unknown) v.rationale.push_back({"general.complex-phase", cite::kPhase, true});
}

PropertyVerdict unknown(const std::string& why) {
    PropertyVerdict v;
    v.rationale.push_back({"general.no-rule", why, false});
    return v;
}

Verdict from_probe(ProbeTag t) {
    switch (t) {
        case ProbeTag::Holds: return Verdict::Yes;
        case ProbeTag::Fails: return Verdict::No;
        case ProbeTag::LikelyHolds: return Verdict::LikelyYes;
        case ProbeTag::LikelyFails: return Verdict::LikelyNo;
        case ProbeTag::Unknown: return Verdict::Unknown;
    }
    return Verdict::Unknown;
}

bool is_yes(Verdict v) { return v == Verdict::Yes; }
bool is_no(Verdict v) { return v == Verdict::No; }

PropertyVerdict acts_rules(const SymbolPair& sp, const Shape& s, const ClassifierConfig& cfg,
                           std::vector<ProbeResult>* evidence) {
    Rules r(cfg);
    using P = Shape::Phi;
    if (s.psi_zero && r.on("acts.zero-weight")) return Rules::make(Verdict::Yes, "acts.zero-weight", cite::kZeroWeight);
    if (sp.dim() == 1) {
        bool nonconst_poly = s.phi_poly && s.phi_deg >= 1;
        if (nonconst_poly && s.psi_poly && r.on("acts.polynomial-multiplier"))
            return Rules::make(Verdict::Yes, "acts.polynomial-multiplier", cite::kPolyMultiplier);
        if (nonconst_poly && s.psi_exp_free && r.on("acts.exp-free-multiplier"))
            return Rules::make(Verdict::Yes, "acts.exp-free-multiplier", cite::kExpFreeMultiplier);
        if (s.phi == P::Constant && s.psi_poly && !s.psi_zero && r.on("acts.constant-symbol"))
            return Rules::make(Verdict::No, "acts.constant-symbol", cite::kConstantSymbol);
        if (s.phi == P::Exp && s.psi_exp && r.on("acts.exp-exp"))
            return Rules::make(Verdict::Yes, "acts.exp-exp", cite::kExpExpActs);
        if (s.phi == P::Sqrt && s.psi_poly && r.on("acts.sqrt-symbol"))
            return Rules::make(Verdict::Yes, "acts.sqrt-symbol", cite::kSqrtActs);
    }
    if (!cfg.evidence) return unknown("no exact rule applies and evidence mode is off");
    ProbeResult pr = probe_acts(sp.psi, sp.phi, cfg.probe);
    Verdict v = from_probe(pr.tag);
    if (v == Verdict::Yes) v = Verdict::LikelyYes;  // finitely many alpha only
    if (evidence) evidence->push_back(pr);
    PropertyVerdict out;
    out.value = v;
    out.rationale.push_back({"acts.grid-evidence", cite::kActsGrid, v == Verdict::No});
    return out;
}

PropertyVerdict pb_rules(const SymbolPair& sp, const Shape& s, const ClassifierConfig& cfg,
                         std::vector<ProbeResult>* evidence) {
    Rules r(cfg);
    using P = Shape::Phi;
    if (s.psi_zero && r.on("pb.zero-weight")) return Rules::make(Verdict::Yes, "pb.zero-weight", cite::kZeroWeight);
    if (sp.dim() == 1) {
        auto const_within = [&](bool strict) {
            return s.psi_const && (strict ? s.psi_abs < 1 : s.psi_abs <= 1);
        };
        if (s.phi == P::Higher) {
            if (s.fixed_points == 0 && s.psi_poly && r.on("pb.no-fixed-points"))
                return Rules::make(Verdict::Yes, "pb.no-fixed-points", cite::kPbNoFixed);
            if (s.fixed_points == 0 && s.psi_exp_free && r.on("pb.no-fixed-points-exp-free"))
                return Rules::make(Verdict::Yes, "pb.no-fixed-points-exp-free", cite::kPbNoFixed);
            if (s.fixed_points > 0 && s.psi_poly && r.on("pb.fixed-points"))
                return Rules::make(Verdict::No, "pb.fixed-points", cite::kPbFixed);
        }
        if (s.psi_poly) {
            if (s.phi == P::Translation && r.on("pb.translation"))
                return Rules::make(const_within(true) ? Verdict::Yes : Verdict::No, "pb.translation", cite::kPbTranslation);
            if (s.phi == P::Affine && r.on("pb.affine"))
                return Rules::make(Verdict::No, "pb.affine", cite::kPbAffine);
            if (s.phi == P::Identity && r.on("pb.identity"))
                return Rules::make(const_within(false) ? Verdict::Yes : Verdict::No, "pb.identity", cite::kPbIdentity);
            if (s.phi == P::Reflection && r.on("pb.reflection"))
                return Rules::make(const_within(false) ? Verdict::Yes : Verdict::No, "pb.reflection", cite::kPbReflection);
            if (s.phi == P::Sqrt && r.on("pb.sqrt-symbol"))
                return Rules::make(const_within(false) ? Verdict::Yes : Verdict::No, "pb.sqrt-symbol", cite::kPbSqrt);
        }
        if (s.phi == P::Exp && s.psi_exp && r.on("pb.exp-exp"))
            return Rules::make(Verdict::Yes, "pb.exp-exp", cite::kPbExpExp);
    }
    if (!cfg.evidence) return unknown("no exact rule applies and evidence mode is off");
    ProbeResult a = probe_iterates(sp.psi, sp.phi, IterateCondition::Weights, IterateMode::PowerBounded, cfg.probe);
    ProbeResult b = probe_iterates(sp.psi, sp.phi, IterateCondition::Symbol, IterateMode::PowerBounded, cfg.probe);
    PropertyVerdict out;
    Verdict va = from_probe(a.tag), vb = from_probe(b.tag);
    if (va == Verdict::No) {
        out.value = Verdict::No;
        out.rationale.push_back({"pb.weights-exact", cite::kPbGridA, true});
    } else if (va == Verdict::LikelyNo) {
        out.value = Verdict::LikelyNo;
        out.rationale.push_back({"pb.grid-evidence", cite::kPbGridA, false});
    } else if ((va == Verdict::LikelyYes || va == Verdict::Yes) && (vb == Verdict::LikelyYes || vb == Verdict::Yes)) {
        out.value = Verdict::LikelyYes;
        out.rationale.push_back({"pb.grid-evidence", cite::kPbGridA, false});
        out.rationale.push_back({"pb.grid-evidence", cite::kPbGridB, false});
    } else if (vb == Verdict::LikelyNo || vb == Verdict::No) {
        auto decay = probe_small_decay(sp.psi, sp.phi, cfg.probe);
        bool small = decay.tag == ProbeTag::Holds || decay.tag == ProbeTag::LikelyHolds;
        if (small) {
            out.value = Verdict::LikelyNo;
            out.rationale.push_back({"pb.grid-evidence", cite::kPbGridBNecessary, false});
        } else {
            out = unknown("the symbol condition fails on the grid but psi is not known to have small decay");
        }
        if (evidence) evidence->push_back(std::move(decay));
    } else {
        out = unknown("grid evidence is inconclusive");
    }
    if (evidence) {
        evidence->push_back(std::move(a));
        evidence->push_back(std::move(b));
    }
    return out;
}

std::pair<PropertyVerdict, PropertyVerdict> top_rules(const SymbolPair& sp, const Shape& s, const PropertyVerdict& pb,
                                                      const ClassifierConfig& cfg, std::vector<ProbeResult>* evidence) {
    Rules r(cfg);
    using P = Shape::Phi;
    if (is_yes(pb.value) && r.on("top.from-power-bounded")) {
        auto v = Rules::make(Verdict::Yes, "top.from-power-bounded", cite::kTopFromPb);
        return {v, v};
    }
    if (sp.dim() == 1) {
        bool affine = s.phi == P::Identity || s.phi == P::Translation || s.phi == P::Reflection || s.phi == P::Affine;
        if (affine && s.psi_poly && !s.psi_const && r.on("top.affine-nonconstant-weight")) {
            auto v = Rules::make(Verdict::No, "top.affine-nonconstant-weight", cite::kTopAffineNonconst);
            return {v, v};
        }
        if (s.phi == P::Sqrt && s.psi_poly && r.on("top.sqrt-symbol")) {
            auto v = Rules::make(s.psi_const ? Verdict::Yes : Verdict::No, "top.sqrt-symbol", cite::kTopSqrt);
            return {v, v};
        }
        if (s.phi_poly && s.phi_deg >= 1 && s.psi_const && !s.psi_zero && r.on("top.composition-polynomial")) {
            auto top = Rules::make(Verdict::Yes, "top.composition-polynomial", cite::kTopComposition);
            PropertyVerdict m;
            if (affine && r.on("top.affine-constant-weight"))
                m = Rules::make(Verdict::Yes, "top.affine-constant-weight", cite::kTopAffineConst);
            else
                m = unknown(cite::kTopOpen);
            return {top, m};
        }
        if (s.phi == P::Higher && s.fixed_points > 0 && s.psi_poly) return {unknown(cite::kTopOpen), unknown(cite::kTopOpen)};
    }
    if (!cfg.evidence) {
        auto u = unknown("no exact rule applies and evidence mode is off");
        return {u, u};
    }
    ProbeResult a = probe_iterates(sp.psi, sp.phi, IterateCondition::Weights, IterateMode::Topologizable, cfg.probe);
    ProbeResult b = probe_iterates(sp.psi, sp.phi, IterateCondition::Symbol, IterateMode::Topologizable, cfg.probe);
    auto combine = [&](Verdict va, Verdict vb) {
        PropertyVerdict out;
        if (va == Verdict::No) {
            out.value = Verdict::No;
            out.rationale.push_back({"top.weights-exact", cite::kTopGrid, true});
        } else if (va == Verdict::LikelyNo) {
            out.value = Verdict::LikelyNo;
            out.rationale.push_back({"top.grid-evidence", cite::kTopGrid, false});
        } else if ((va == Verdict::LikelyYes || va == Verdict::Yes) && (vb == Verdict::LikelyYes || vb == Verdict::Yes)) {
            out.value = Verdict::LikelyYes;
            out.rationale.push_back({"top.grid-evidence", cite::kTopGrid, false});
        } else {
            out = unknown("grid evidence is inconclusive");
        }
        return out;
    };
    PropertyVerdict top = combine(from_probe(a.tag), from_probe(b.tag));
    PropertyVerdict m = combine(from_probe(*a.m_tag), from_probe(*b.m_tag));
    // keep the pair ordered: m-topologizable implies topologizable
    if (is_no(top.value)) m = Rules::make(Verdict::No, "top.implies-m", cite::kTopImpliesM);
    if (top.value == Verdict::LikelyNo && (m.value == Verdict::LikelyYes || m.value == Verdict::Unknown)) {
        m.value = Verdict::LikelyNo;
        m.rationale = top.rationale;
    }
    if (evidence) {
        evidence->push_back(std::move(a));
        evidence->push_back(std::move(b));
    }
    return {top, m};
}

PropertyVerdict itz_rules(const SymbolPair& sp, const Shape& s, const PropertyVerdict& pb, const ClassifierConfig& cfg) {
    Rules r(cfg);
    using P = Shape::Phi;
    if (s.psi_zero && r.on("itz.zero-weight")) return Rules::make(Verdict::Yes, "itz.zero-weight", cite::kZeroWeight);
    if (sp.dim() == 1) {
        if (s.phi == P::Higher && s.fixed_points == 0 && s.psi_exp_free && r.on("itz.no-fixed-points"))
            return Rules::make(Verdict::Yes, "itz.no-fixed-points", cite::kItzNoFixed);
        if (s.phi == P::Translation && s.psi_const && s.psi_abs < 1 && r.on("itz.translation"))
            return Rules::make(Verdict::Yes, "itz.translation", cite::kItzTranslation);
        if ((s.phi == P::Identity || s.phi == P::Reflection) && s.psi_const && r.on("itz.scalar"))
            return Rules::make(s.psi_abs < 1 ? Verdict::Yes : Verdict::No, "itz.scalar", cite::kItzScalar);
    }
    if (is_no(pb.value) && r.on("itz.needs-power-bounded"))
        return Rules::make(Verdict::No, "itz.needs-power-bounded", cite::kItzNeedsPb);
    if (pb.value == Verdict::LikelyNo) return Rules::make(Verdict::LikelyNo, "itz.grid-evidence", cite::kItzGrid, false);
    return unknown("no exact rule applies");
}

std::pair<PropertyVerdict, PropertyVerdict> ergodic_rules(const SymbolPair& sp, const Shape& s,
                                                          const PropertyVerdict& pb, const ClassifierConfig& cfg) {
    Rules r(cfg);
    if (is_yes(pb.value) && r.on("erg.from-power-bounded"))
        return {Rules::make(Verdict::Yes, "erg.from-power-bounded", cite::kErgFromPb),
                Rules::make(Verdict::Yes, "erg.from-power-bounded", cite::kCesFromPb)};
    if (sp.dim() == 1 && s.phi == Shape::Phi::Higher && s.fixed_points > 0 && s.psi_const && s.psi_abs == 1 &&
        s.psi_poly->constant_term() == 1 && !sp.psi_phase && r.on("erg.composition-fixed-points")) {
        auto v = Rules::make(Verdict::No, "erg.composition-fixed-points", cite::kErgComposition);
        return {v, v};
    }
    if (pb.value == Verdict::LikelyYes) {
        auto v = Rules::make(Verdict::LikelyYes, "erg.grid-evidence", cite::kErgGrid, false);
        return {v, v};
    }
    return {unknown("only the power bounded case is decided"), unknown("only the power bounded case is decided")};
}

PropertyVerdict sc_rules(const SymbolPair& sp, const Shape& s, const ClassifierConfig& cfg) {
    if (sp.dim() != 1 || !s.phi_poly) throw NotApplicable("weak supercyclicity is only analysed for polynomial phi in one variable");
    Rules r(cfg);
    using P = Shape::Phi;
    if (s.psi_has_zero.value_or(false) && r.on("sc.weight-zero")) return Rules::make(Verdict::No, "sc.weight-zero", cite::kScZero);
    if (s.phi == P::Constant && r.on("sc.constant-symbol")) return Rules::make(Verdict::No, "sc.constant-symbol", cite::kScConstant);
    if (s.phi == P::Identity && r.on("sc.identity")) return Rules::make(Verdict::No, "sc.identity", cite::kScIdentity);
    if ((s.phi == P::Affine || s.phi == P::Reflection) && r.on("sc.affine"))
        return Rules::make(Verdict::No, "sc.affine", cite::kScAffine);
    if (s.phi == P::Higher) {
        if (!is_injective(*s.phi_poly) && r.on("sc.non-injective"))
            return Rules::make(Verdict::No, "sc.non-injective", cite::kScNonInjective);
        if (s.fixed_points >= 2 && r.on("sc.two-fixed-points"))
            return Rules::make(Verdict::No, "sc.two-fixed-points", cite::kScTwoFixed);
        bool zero_free = s.psi_has_zero.has_value() && !*s.psi_has_zero;
        if (s.fixed_points == 1 && zero_free && s.psi_exp_free && r.on("sc.odd-degree-one-fixed-point"))
            return Rules::make(Verdict::No, "sc.odd-degree-one-fixed-point", cite::kScOddOneFixed);
    }
    if (s.phi == P::Translation) {
        PropertyVerdict v;
        v.rationale.push_back({"sc.translation-open", cite::kScTranslation, true});
        return v;
    }
    return unknown("no exclusion argument applies");
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "Yes";
        case Verdict::No: return "No";
        case Verdict::LikelyYes: return "LikelyYes";
        case Verdict::LikelyNo: return "LikelyNo";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::Yes, Verdict::No, Verdict::LikelyYes, Verdict::LikelyNo, Verdict::Unknown})
        if (to_string(v) == s) return v;
    throw InvalidRange("unknown verdict '" + s + "'");
}

SymbolPair SymbolPair::parse(const std::string& psi, const std::string& phi, std::size_t dim, bool phase) {
    if (dim == 0) throw DimensionMismatch("dimension must be at least 1");
    return SymbolPair{parse_expr(psi, dim), parse_expr_list(phi, dim), phase};
}

std::vector<std::pair<std::string, const PropertyVerdict*>> ClassificationReport::properties() const {
    return {{"acts_on_S", &acts_on_S},
            {"power_bounded", &power_bounded},
            {"topologizable", &topologizable},
            {"m_topologizable", &m_topologizable},
            {"iterates_to_zero", &iterates_to_zero},
            {"uniformly_mean_ergodic", &uniformly_mean_ergodic},
            {"cesaro_bounded", &cesaro_bounded},
            {"weak_supercyclicity_possible", &weak_supercyclicity_possible},
            {"universal_schwartz_weights", &universal_schwartz_weights}};
}

const PropertyVerdict& ClassificationReport::property(const std::string& name) const {
    for (const auto& [n, v] : properties())
        if (n == name) return *v;
    throw InvalidRange("unknown property '" + name + "'");
}

PropertyVerdict classify_acts(const SymbolPair& sp, const ClassifierConfig& cfg, std::vector<ProbeResult>* evidence) {
    if (sp.psi.dim() != sp.dim()) throw DimensionMismatch("psi and phi live in different dimensions");
    auto v = acts_rules(sp, analyse(sp), cfg, evidence);
    add_phase_note(sp, v);
    return v;
}

PropertyVerdict classify_power_bounded(const SymbolPair& sp, const ClassifierConfig& cfg,
                                       std::vector<ProbeResult>* evidence) {
    if (is_no(classify_acts(sp, cfg).value)) throw PreconditionViolated("the operator does not act on S");
    auto v = pb_rules(sp, analyse(sp), cfg, evidence);
    add_phase_note(sp, v);
    return v;
}

std::pair<PropertyVerdict, PropertyVerdict> classify_topologizable(const SymbolPair& sp, const ClassifierConfig& cfg,
                                                                   std::vector<ProbeResult>* evidence) {
    if (is_no(classify_acts(sp, cfg).value)) throw PreconditionViolated("the operator does not act on S");
    Shape s = analyse(sp);
    return top_rules(sp, s, pb_rules(sp, s, cfg, evidence), cfg, evidence);
}

PropertyVerdict classify_iterates_to_zero(const SymbolPair& sp, const ClassifierConfig& cfg) {
    if (is_no(classify_acts(sp, cfg).value)) throw PreconditionViolated("the operator does not act on S");
    Shape s = analyse(sp);
    return itz_rules(sp, s, pb_rules(sp, s, cfg, nullptr), cfg);
}

PropertyVerdict classify_supercyclicity(const SymbolPair& sp, const ClassifierConfig& cfg) {
    return sc_rules(sp, analyse(sp), cfg);
}

PropertyVerdict classify_universal_weights(const std::vector<Expr>& phi, const ClassifierConfig& cfg) {
    Rules r(cfg);
    if (phi.empty()) throw DimensionMismatch("phi needs at least one component");
    bool exp_free = std::all_of(phi.begin(), phi.end(), [](const Expr& e) { return e.is_exp_free(); });
    if (exp_free && r.on("uw.exp-free-symbol")) return Rules::make(Verdict::Yes, "uw.exp-free-symbol", cite::kUwExpFree);
    if (phi.size() == 1 && phi[0] == Expr::exp(Expr::variable(1, 0)) && r.on("uw.exp-symbol"))
        return Rules::make(Verdict::No, "uw.exp-symbol", cite::kUwExp);
    if (!cfg.evidence) return unknown("no exact rule applies and evidence mode is off");
    // every low-order derivative of every partial derivative must stay polynomially bounded
    std::size_t dim = phi.size();
    auto id = identity_map(dim);
    bool all_finite = true, some_infinite = false;
    for (const auto& comp : phi)
        for (std::size_t k = 0; k < dim; ++k) {
            Expr d = comp.differentiate(k);
            for (const auto& beta : indices_up_to_order(dim, 2)) {
                Expr g = d.derivative(beta);
                if (g.is_zero()) continue;
                GrowthProfile prof(g, id, cfg.probe.grid);
                bool found = false, all_inf = true;
                for (Rational q = 0; q <= 64; q += 1) {
                    GrowthTag t = prof.verdict(0, q).tag;
                    if (t == GrowthTag::LikelyFinite) {
                        found = true;
                        break;
                    }
                    if (t != GrowthTag::LikelyInfinite) all_inf = false;
                }
                if (!found) all_finite = false;
                if (!found && all_inf) some_infinite = true;
            }
        }
    if (some_infinite) return Rules::make(Verdict::LikelyNo, "uw.grid-evidence", cite::kUwGrid, false);
    if (all_finite) return Rules::make(Verdict::LikelyYes, "uw.grid-evidence", cite::kUwGrid, false);
    return unknown("grid evidence is inconclusive");
}

void check_lattice(const ClassificationReport& r) {
    auto fail = [](const std::string& what) { throw InternalInconsistency("report violates " + what); };
    auto yes = [](const PropertyVerdict& v) { return v.value == Verdict::Yes; };
    if (yes(r.power_bounded) && !yes(r.m_topologizable)) fail("power bounded => m-topologizable");
    if (yes(r.m_topologizable) && !yes(r.topologizable)) fail("m-topologizable => topologizable");
    if (yes(r.power_bounded) && !yes(r.uniformly_mean_ergodic)) fail("power bounded => uniformly mean ergodic");
    if (yes(r.power_bounded) && !yes(r.cesaro_bounded)) fail("power bounded => Cesaro bounded");
    if (yes(r.iterates_to_zero) && !yes(r.power_bounded)) fail("iterates to zero => power bounded");
    for (const auto* v : {&r.power_bounded, &r.topologizable, &r.m_topologizable, &r.iterates_to_zero,
                          &r.uniformly_mean_ergodic, &r.cesaro_bounded, &r.weak_supercyclicity_possible})
        if (yes(*v) && !yes(r.acts_on_S)) fail("operator property => acts on S");
    for (const auto& [name, v] : r.properties()) {
        if (v->rationale.empty() && v->value != Verdict::Unknown) fail("nonempty rationale for " + name);
        bool exact = v->value == Verdict::Yes || v->value == Verdict::No;
        // exactness firewall: a definite verdict needs an exact rule behind it
        if (exact && std::none_of(v->rationale.begin(), v->rationale.end(), [](const RationaleEntry& e) { return e.exact; }))
            fail("exact rationale for " + name);
    }
}

ClassificationReport full_report(const SymbolPair& sp, const ClassifierConfig& cfg) {
    if (sp.psi.dim() != sp.dim()) throw DimensionMismatch("psi and phi live in different dimensions");
    Shape s = analyse(sp);
    ClassificationReport r;
    r.acts_on_S = acts_rules(sp, s, cfg, &r.evidence);
    add_phase_note(sp, r.acts_on_S);
    if (is_no(r.acts_on_S.value)) {
        auto no = Rules::make(Verdict::No, "general.not-acting", cite::kNotActing);
        r.power_bounded = r.topologizable = r.m_topologizable = r.iterates_to_zero = no;
        r.uniformly_mean_ergodic = r.cesaro_bounded = r.weak_supercyclicity_possible = no;
    } else {
        r.power_bounded = pb_rules(sp, s, cfg, &r.evidence);
        r.iterates_to_zero = itz_rules(sp, s, r.power_bounded, cfg);
        if (r.iterates_to_zero.value == Verdict::Yes && r.power_bounded.value != Verdict::Yes)
            r.power_bounded = Rules::make(Verdict::Yes, "pb.from-iterates-to-zero", cite::kItzNeedsPb);
        add_phase_note(sp, r.power_bounded);
        std::tie(r.topologizable, r.m_topologizable) = top_rules(sp, s, r.power_bounded, cfg, &r.evidence);
        std::tie(r.uniformly_mean_ergodic, r.cesaro_bounded) = ergodic_rules(sp, s, r.power_bounded, cfg);
        try {
            r.weak_supercyclicity_possible = sc_rules(sp, s, cfg);
        } catch (const NotApplicable& e) {
            r.weak_supercyclicity_possible = unknown(e.what());
        }
    }
    // an exact Yes on an operator property already establishes that the operator acts
    if (r.acts_on_S.value != Verdict::Yes)
        for (const auto* v : {&r.power_bounded, &r.topologizable, &r.m_topologizable, &r.iterates_to_zero,
                              &r.uniformly_mean_ergodic, &r.cesaro_bounded, &r.weak_supercyclicity_possible})
            if (v->value == Verdict::Yes) {
                r.acts_on_S = Rules::make(Verdict::Yes, "acts.from-operator-property", cite::kActsFromOperator);
                break;
            }
    r.universal_schwartz_weights = classify_universal_weights(sp.phi, cfg);
    check_lattice(r);
    return r;
}

}  // namespace wcop
