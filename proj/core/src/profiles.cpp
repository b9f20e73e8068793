#include "gs/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "gs/errors.hpp"

namespace gs {

namespace {

std::string fmt_num(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- small exact-rational helper for exponent matching ---------------------

struct Rational {
    long long num = 0, den = 1;
};

std::optional<Rational> to_rational(double x, long long max_den = 1 << 20) {
    if (!std::isfinite(x)) return std::nullopt;
    // continued-fraction expansion
    double v = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(v);
        if (std::abs(fl) > 4e18) return std::nullopt;
        const long long a = static_cast<long long>(fl);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= 1e-12 * std::max(1.0, std::abs(x))) {
            long long n = p1, d = q1;
            if (d < 0) { n = -n; d = -d; }
            return Rational{n, d};
        }
        const double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return std::nullopt;
}

bool nearly(double x, double y, double rel = 1e-12) {
    return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
}

} // namespace

// ---------------------------------------------------------------------------
// ProfileSpec
// ---------------------------------------------------------------------------

ProfileSpec ProfileSpec::zero() {
    ProfileSpec s;
    s.form = ZeroForm{};
    return s;
}

ProfileSpec ProfileSpec::affine(double k0, double k1) {
    ProfileSpec s;
    if (k0 == 0 && k1 == 0)
        s.form = ZeroForm{};
    else
        s.form = AffineForm{k0, k1};
    return s;
}

ProfileSpec ProfileSpec::power_shifted(double a, double c, double p) {
    if (a == 0) return zero();
    if (p == 0) return affine(a, 0);   // a*(psi+c)^0 degrades to the constant a
    if (p == 1) return affine(a * c, a);
    ProfileSpec s;
    s.form = PowerShiftedForm{a, c, p};
    return s;
}

ProfileSpec ProfileSpec::exponential(double a, double c) {
    if (a == 0) return zero();
    if (c == 0) return affine(a, 0);
    ProfileSpec s;
    s.form = ExponentialForm{a, c};
    return s;
}

ProfileSpec ProfileSpec::opaque(Expr e) {
    ProfileSpec s;
    s.form = OpaqueForm{};
    s.ast = std::move(e);
    return s;
}

double ProfileSpec::operator()(double psi) const {
    if (std::holds_alternative<ZeroForm>(form)) return 0.0;
    if (const auto* a = std::get_if<AffineForm>(&form)) return a->k0 + a->k1 * psi;
    if (const auto* p = std::get_if<PowerShiftedForm>(&form)) {
        const double base = psi + p->c;
        if (base == 0 && p->p <= 0) throw domain_error("profile power at zero base");
        if (base < 0 && !is_integral_exponent(p->p))
            throw domain_error("profile fractional power of a negative base");
        return p->a * std::pow(base, p->p);
    }
    if (const auto* e = std::get_if<ExponentialForm>(&form)) return e->a * std::exp(e->c * psi);
    return ast->eval_psi(psi);
}

std::string ProfileSpec::print() const {
    if (std::holds_alternative<ZeroForm>(form)) return "0";
    if (const auto* a = std::get_if<AffineForm>(&form)) {
        if (a->k1 == 0) return fmt_num(a->k0);
        std::string lin = (a->k1 == 1) ? "psi" : (a->k1 == -1 ? "-psi" : fmt_num(a->k1) + "*psi");
        if (a->k0 == 0) return lin;
        if (a->k1 < 0) {
            std::string mag = (a->k1 == -1) ? "psi" : fmt_num(-a->k1) + "*psi";
            return fmt_num(a->k0) + " - " + mag;
        }
        return fmt_num(a->k0) + " + " + lin;
    }
    if (const auto* p = std::get_if<PowerShiftedForm>(&form)) {
        std::string base = "psi";
        if (p->c > 0)
            base = "(psi+" + fmt_num(p->c) + ")";
        else if (p->c < 0)
            base = "(psi-" + fmt_num(-p->c) + ")";
        std::string pw = base + "^" + (p->p < 0 ? "(" + fmt_num(p->p) + ")" : fmt_num(p->p));
        if (p->a == 1) return pw;
        if (p->a == -1) return "-" + pw;
        return fmt_num(p->a) + "*" + pw;
    }
    if (const auto* e = std::get_if<ExponentialForm>(&form)) {
        std::string arg = (e->c == 1) ? "psi" : (e->c == -1 ? "-psi" : fmt_num(e->c) + "*psi");
        std::string ex = "exp(" + arg + ")";
        if (e->a == 1) return ex;
        if (e->a == -1) return "-" + ex;
        return fmt_num(e->a) + "*" + ex;
    }
    return ast->print();
}

// ---------------------------------------------------------------------------
// Form recognition
// ---------------------------------------------------------------------------

namespace {

using Nodes = std::vector<ExprNode>;

bool structural_equal(const Nodes& n, int i, int j) {
    if (i == j) return true;
    const ExprNode &x = n[i], &y = n[j];
    if (x.op != y.op) return false;
    switch (x.op) {
        case ExprOp::Const: return x.value == y.value;
        case ExprOp::Var: return x.var == y.var;
        default: break;
    }
    if ((x.a >= 0) != (y.a >= 0) || (x.b >= 0) != (y.b >= 0)) return false;
    if (x.a >= 0 && !structural_equal(n, x.a, y.a)) return false;
    if (x.b >= 0 && !structural_equal(n, x.b, y.b)) return false;
    return true;
}

struct Factor {
    int node;       // base subtree
    double exponent;
};

// Flatten a term into coefficient * product of base^exponent factors.
// Returns false when a non-constant division or exponent blocks the
// decomposition.
bool collect_product(const Nodes& n, int i, double& coef, std::vector<Factor>& factors, double outer_exp = 1.0) {
    const ExprNode& nd = n[i];
    switch (nd.op) {
        case ExprOp::Const: {
            if (nd.value == 0 && outer_exp < 0) return false;
            const double c = std::pow(nd.value, outer_exp);
            if (!std::isfinite(c)) return false;
            if (nd.value < 0 && !is_integral_exponent(outer_exp)) return false;
            coef *= c;
            return true;
        }
        case ExprOp::Neg: {
            if (!is_integral_exponent(outer_exp)) {
                factors.push_back({i, outer_exp});
                return true;
            }
            coef *= (static_cast<long long>(outer_exp) % 2 == 0) ? 1.0 : -1.0;
            return collect_product(n, nd.a, coef, factors, outer_exp);
        }
        case ExprOp::Mul:
            return collect_product(n, nd.a, coef, factors, outer_exp) &&
                   collect_product(n, nd.b, coef, factors, outer_exp);
        case ExprOp::Div:
            return collect_product(n, nd.a, coef, factors, outer_exp) &&
                   collect_product(n, nd.b, coef, factors, -outer_exp);
        case ExprOp::Pow: {
            if (n[nd.b].op == ExprOp::Const)
                return collect_product(n, nd.a, coef, factors, outer_exp * n[nd.b].value);
            factors.push_back({i, outer_exp});
            return true;
        }
        default:
            factors.push_back({i, outer_exp});
            return true;
    }
}

void merge_factors(const Nodes& n, std::vector<Factor>& factors) {
    std::vector<Factor> merged;
    for (const Factor& f : factors) {
        bool hit = false;
        for (Factor& m : merged) {
            if (structural_equal(n, m.node, f.node)) {
                m.exponent += f.exponent;
                hit = true;
                break;
            }
        }
        if (!hit) merged.push_back(f);
    }
    std::erase_if(merged, [](const Factor& f) { return f.exponent == 0; });
    factors = std::move(merged);
}

// psi, psi + c, c + psi, psi - c  ->  shift c
std::optional<double> match_shifted_psi(const Nodes& n, int i) {
    const ExprNode& nd = n[i];
    if (nd.op == ExprOp::Var && nd.var == ExprVar::Psi) return 0.0;
    if (nd.op == ExprOp::Add) {
        if (n[nd.a].op == ExprOp::Var && n[nd.a].var == ExprVar::Psi && n[nd.b].op == ExprOp::Const)
            return n[nd.b].value;
        if (n[nd.b].op == ExprOp::Var && n[nd.b].var == ExprVar::Psi && n[nd.a].op == ExprOp::Const)
            return n[nd.a].value;
    }
    if (nd.op == ExprOp::Sub) {
        if (n[nd.a].op == ExprOp::Var && n[nd.a].var == ExprVar::Psi && n[nd.b].op == ExprOp::Const)
            return -n[nd.b].value;
    }
    return std::nullopt;
}

std::optional<AffineForm> try_affine(const Nodes& n, int root);

// linear-in-psi argument of exp()
std::optional<ExponentialForm> match_exponential(const Nodes& n, int i, double coef, double exponent) {
    if (n[i].op != ExprOp::Exp) return std::nullopt;
    const auto lin = try_affine(n, n[i].a);
    if (!lin) return std::nullopt;
    // coef * exp(k0 + k1 psi)^exponent = coef e^(k0 exponent) * exp(k1 exponent psi)
    const double a = coef * std::exp(lin->k0 * exponent);
    const double c = lin->k1 * exponent;
    if (!std::isfinite(a)) return std::nullopt;
    return ExponentialForm{a, c};
}

// Flatten sums of constant and constant*psi terms.
std::optional<AffineForm> try_affine(const Nodes& n, int root) {
    double k0 = 0, k1 = 0;
    std::function<bool(int, double)> walk = [&](int i, double sign) -> bool {
        const ExprNode& nd = n[i];
        if (nd.op == ExprOp::Add) return walk(nd.a, sign) && walk(nd.b, sign);
        if (nd.op == ExprOp::Sub) return walk(nd.a, sign) && walk(nd.b, -sign);
        double coef = sign;
        std::vector<Factor> factors;
        if (!collect_product(n, i, coef, factors)) return false;
        merge_factors(n, factors);
        if (factors.empty()) {
            k0 += coef;
            return true;
        }
        if (factors.size() == 1 && factors[0].exponent == 1.0) {
            const ExprNode& f = n[factors[0].node];
            if (f.op == ExprOp::Var && f.var == ExprVar::Psi) {
                k1 += coef;
                return true;
            }
        }
        return false;
    };
    if (!walk(root, 1.0)) return std::nullopt;
    return AffineForm{k0, k1};
}

ProfileSpec recognize(Expr e, ProfileRole role) {
    const Nodes& n = e.nodes();
    const int root = e.root();

    if (auto aff = try_affine(n, root)) {
        ProfileSpec s = ProfileSpec::affine(aff->k0, aff->k1);
        s.role = role;
        s.ast = std::move(e);
        return s;
    }

    double coef = 1.0;
    std::vector<Factor> factors;
    if (collect_product(n, root, coef, factors)) {
        merge_factors(n, factors);
        if (factors.size() == 1) {
            const Factor& f = factors[0];
            if (auto c = match_shifted_psi(n, f.node)) {
                ProfileSpec s = ProfileSpec::power_shifted(coef, *c, f.exponent);
                s.role = role;
                s.ast = std::move(e);
                return s;
            }
            if (auto ex = match_exponential(n, f.node, coef, f.exponent)) {
                ProfileSpec s = ProfileSpec::exponential(ex->a, ex->c);
                s.role = role;
                s.ast = std::move(e);
                return s;
            }
        }
    }

    ProfileSpec s = ProfileSpec::opaque(std::move(e));
    s.role = role;
    return s;
}

} // namespace

ProfileSpec parse_profile(const std::string& text, ProfileRole role) {
    Expr e = parse_expression(text, ParseOptions{false, false, true});
    return recognize(std::move(e), role);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

std::string to_string(SymTag tag) {
    switch (tag) {
        case SymTag::A: return "a";
        case SymTag::APrime: return "a'";
        case SymTag::ASecond: return "a''";
        case SymTag::B: return "b";
        case SymTag::CPrime: return "c'";
        case SymTag::CSecond: return "c''";
        case SymTag::CThird: return "c'''";
        case SymTag::CFourth: return "c''''";
        case SymTag::D: return "d";
        case SymTag::CondKappa: return "conditional-kappa";
        case SymTag::CondRotation: return "conditional-rotation";
        case SymTag::WeakSigma: return "weak-sigma";
        case SymTag::None: return "none";
    }
    return "none";
}

const TagInfo& SymmetryClass::primary() const {
    static const TagInfo none{};
    return tags.empty() ? none : tags.front();
}

bool SymmetryClass::has(SymTag t) const { return find(t) != nullptr; }

const TagInfo* SymmetryClass::find(SymTag t) const {
    for (const auto& ti : tags)
        if (ti.tag == t) return &ti;
    return nullptr;
}

namespace {

// q from the power-law exponents: p_F = 1 + 2/q, p_G = 1 + 1/q. Exact
// rational comparison when both exponents are rational, else 1e-12 relative.
std::optional<double> consistent_q(const PowerShiftedForm* pf, const PowerShiftedForm* pg) {
    std::optional<double> qf, qg;
    if (pf) {
        if (pf->p == 1) return std::nullopt;
        qf = 2.0 / (pf->p - 1.0);
    }
    if (pg) {
        if (pg->p == 1) return std::nullopt;
        qg = 1.0 / (pg->p - 1.0);
    }
    if (qf && qg) {
        const auto rf = to_rational(*qf), rg = to_rational(*qg);
        if (rf && rg) {
            if (rf->num * rg->den != rg->num * rf->den) return std::nullopt;
            return *qf;
        }
        if (!nearly(*qf, *qg)) return std::nullopt;
        return *qf;
    }
    if (qf) return qf;
    return qg;
}

// Solve the weak-symmetry relations a = 4A^2(s^2-s)q(q+1), b = 2Aq(2q+1)
// for (sigma, A); returns the sigma < 1/2 branch.
std::optional<std::pair<double, double>> weak_sigma_from(double q, double a, double b) {
    const double tiny = 1e-12;
    if (std::abs(q) < tiny) return std::nullopt;
    if (std::abs(2 * q + 1) < tiny) { // q = -1/2: b forced to zero, A free up to sign
        if (std::abs(b) > tiny) return std::nullopt;
        if (a < -tiny) return {{2.0, std::sqrt(-a / 2.0)}};
        if (a > tiny) return {{0.5, 2.0 * std::sqrt(a)}};
        return std::nullopt;
    }
    if (std::abs(q + 1) < tiny) { // q = -1: a forced to zero, sigma unconstrained
        if (std::abs(a) > tiny) return std::nullopt;
        if (b == 0) return std::nullopt;
        return {{-1.0, b / 2.0}};
    }
    if (b == 0) return std::nullopt; // would force A = 0
    const double A = b / (2 * q * (2 * q + 1));
    const double m = a / (4 * A * A * q * (q + 1));
    const double disc = 1 + 4 * m;
    if (disc < -1e-12) return std::nullopt;
    const double sigma = 0.5 * (1 - std::sqrt(std::max(disc, 0.0)));
    if (std::abs(sigma) < tiny || std::abs(sigma - 1) < tiny) return std::nullopt;
    return {{sigma, A}};
}

// G == kappa^2 F as expressions, decided by evaluation at 20 random psi.
std::optional<double> kappa_squared(const ProfileSpec& F, const ProfileSpec& G) {
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> dist(0.05, 3.0);
    double k2 = 0;
    int got = 0;
    for (int attempt = 0; attempt < 400 && got < 20; ++attempt) {
        const double psi = dist(rng);
        double fv, gv;
        try {
            fv = F(psi);
            gv = G(psi);
        } catch (const domain_error&) {
            continue;
        }
        if (fv == 0 || !std::isfinite(fv) || !std::isfinite(gv)) continue;
        const double ratio = gv / fv;
        if (got == 0)
            k2 = ratio;
        else if (std::abs(ratio - k2) > 1e-12 * std::max(1.0, std::abs(k2)))
            return std::nullopt;
        ++got;
    }
    if (got < 20) return std::nullopt;
    if (k2 < 0) return std::nullopt; // no real kappa
    return k2;
}

} // namespace

SymmetryClass classify(const ProfileSpec& F, const ProfileSpec& G) {
    SymmetryClass out;
    const bool zf = F.is_zero(), zg = G.is_zero();

    if (zf && zg) {
        TagInfo d{SymTag::D, {{"a0", 0.0}, {"b0", 0.0}}};
        out.tags.push_back(d);
        return out;
    }

    // conditional rotation: F identically zero, any G
    if (zf) {
        TagInfo t{SymTag::CondRotation, {}};
        if (const auto* pg = G.as_power(); pg && pg->c == 0) {
            t.params["beta"] = pg->p;
            t.params["b"] = pg->a;
        } else if (const auto* ag = G.as_affine(); ag && ag->k0 == 0) {
            t.params["beta"] = 1.0;
            t.params["b"] = ag->k1;
        } else if (const auto* ag2 = G.as_affine(); ag2 && ag2->k1 == 0) {
            t.params["beta"] = 0.0;
            t.params["b"] = ag2->k0;
        }
        out.tags.push_back(t);
    }

    // conditional kappa: G = kappa^2 F with nonzero F, G
    if (!zf && !zg) {
        if (auto k2 = kappa_squared(F, G)) {
            TagInfo t{SymTag::CondKappa, {{"kappa", std::sqrt(*k2)}, {"kappa2", *k2}}};
            out.tags.push_back(t);
        }
    }

    // power family (cases a / a' / a''), with zero sides as wildcards
    {
        const PowerShiftedForm* pf = F.as_power();
        const PowerShiftedForm* pg = G.as_power();
        double aF = 0, bG = 0, cF = 0, cG = 0;
        bool fok = false, gok = false;
        if (pf) { aF = pf->a; cF = pf->c; fok = true; }
        if (pg) { bG = pg->a; cG = pg->c; gok = true; }
        // constants are psi^0 powers (q then forced to -2 resp. -1)
        PowerShiftedForm f_const, g_const;
        if (!pf) {
            if (const auto* af = F.as_affine(); af && af->k1 == 0 && !zf) {
                f_const = {af->k0, 0.0, 0.0};
                pf = &f_const;
                aF = af->k0;
                fok = true;
            } else if (zf) {
                fok = true; // a = 0 wildcard
            }
        }
        if (!pg) {
            if (const auto* ag = G.as_affine(); ag && ag->k1 == 0 && !zg) {
                g_const = {ag->k0, 0.0, 0.0};
                pg = &g_const;
                bG = ag->k0;
                gok = true;
            } else if (zg) {
                gok = true; // b = 0 wildcard
            }
        }
        if (fok && gok && (pf || pg)) {
            // shifts must agree; constant/zero sides do not pin c
            bool c_ok = true;
            double c = 0;
            const bool f_pins = pf && pf->p != 0;
            const bool g_pins = pg && pg->p != 0;
            if (f_pins && g_pins) {
                c_ok = std::abs(pf->c - pg->c) <= 1e-12 * std::max(1.0, std::abs(pf->c));
                c = pf->c;
            } else if (f_pins) {
                c = cF;
            } else if (g_pins) {
                c = cG;
            }
            if (c_ok) {
                const auto q = consistent_q(pf, pg);
                if (q && *q != 0) {
                    TagInfo t;
                    t.params["q"] = *q;
                    t.params["a"] = aF;
                    t.params["b"] = bG;
                    t.params["c"] = c;
                    if (nearly(*q, -0.25))
                        t.tag = SymTag::ASecond;
                    else
                        t.tag = (c == 0) ? SymTag::A : SymTag::APrime;
                    out.tags.push_back(t);
                    if (c == 0) {
                        if (auto ws = weak_sigma_from(*q, aF, bG)) {
                            TagInfo w{SymTag::WeakSigma,
                                      {{"q", *q}, {"sigma", ws->first}, {"A", ws->second},
                                       {"a", aF}, {"b", bG}, {"sigma_partner", 1 - ws->first}}};
                            out.tags.push_back(w);
                        }
                    }
                }
            }
        }
    }

    // exponential family (case b): F = a e^(2c psi), G = b e^(c psi)
    {
        const ExponentialForm* ef = F.as_exponential();
        const ExponentialForm* eg = G.as_exponential();
        if ((ef || zf) && (eg || zg) && (ef || eg)) {
            bool ok = true;
            double c = 0;
            if (ef && eg) {
                ok = nearly(ef->c, 2 * eg->c);
                c = eg->c;
            } else if (ef) {
                c = ef->c / 2;
            } else {
                c = eg->c;
            }
            if (ok && c != 0) {
                TagInfo t{SymTag::B, {{"a", ef ? ef->a : 0.0}, {"b", eg ? eg->a : 0.0}, {"c", c}}};
                out.tags.push_back(t);
            }
        }
    }

    // linear cases
    {
        auto affine_of = [](const ProfileSpec& s) -> std::optional<AffineForm> {
            if (s.is_zero()) return AffineForm{0, 0};
            if (const auto* a = s.as_affine()) return *a;
            return std::nullopt;
        };
        const auto af = affine_of(F), ag = affine_of(G);
        if (af && ag) {
            const double a0 = af->k0, a1 = af->k1, b0 = ag->k0, b1 = ag->k1;
            if (a1 != 0 || b1 != 0) {
                TagInfo t;
                t.params = {{"a0", a0}, {"a1", a1}, {"b0", b0}, {"b1", b1}};
                if (a0 == 0 && b0 == 0)
                    t.tag = SymTag::CPrime;
                else if (a1 == 0 && b0 == 0 && b1 != 0)
                    t.tag = SymTag::CSecond;
                else if (a0 == 0 && b1 == 0 && a1 != 0)
                    t.tag = SymTag::CThird;
                else
                    t.tag = SymTag::CFourth;
                out.tags.push_back(t);
            } else {
                TagInfo t{SymTag::D, {{"a0", a0}, {"b0", b0}}};
                out.tags.push_back(t);
            }
        }
    }

    if (out.tags.empty()) out.tags.push_back(TagInfo{SymTag::None, {}});

    // most-specific-first ordering
    auto rank = [](SymTag t) {
        switch (t) {
            case SymTag::CondRotation: return 0;
            case SymTag::CondKappa: return 1;
            case SymTag::ASecond: return 2;
            case SymTag::A: return 3;
            case SymTag::APrime: return 4;
            case SymTag::WeakSigma: return 5;
            case SymTag::B: return 6;
            case SymTag::CPrime: return 7;
            case SymTag::CSecond: return 8;
            case SymTag::CThird: return 9;
            case SymTag::CFourth: return 10;
            case SymTag::D: return 11;
            case SymTag::None: return 12;
        }
        return 12;
    };
    std::stable_sort(out.tags.begin(), out.tags.end(),
                     [&](const TagInfo& x, const TagInfo& y) { return rank(x.tag) < rank(y.tag); });
    return out;
}

// ---------------------------------------------------------------------------
// Weak family relations
// ---------------------------------------------------------------------------

WeakFamily weak_family(double q, double A, double sigma) {
    if (q == 0) throw std::invalid_argument("weak_family: q must be nonzero");
    if (A == 0) throw std::invalid_argument("weak_family: A must be nonzero");
    if (sigma == 0 || sigma == 1)
        throw std::invalid_argument("weak_family: sigma in {0, 1} is degenerate");
    WeakFamily w;
    w.a = 4 * A * A * (sigma * sigma - sigma) * q * (q + 1);
    w.b = 2 * A * q * (2 * q + 1);
    w.F = ProfileSpec::power_shifted(w.a, 0, 1 + 2 / q);
    w.F.role = ProfileRole::F;
    w.G = ProfileSpec::power_shifted(w.b, 0, 1 + 1 / q);
    w.G.role = ProfileRole::G;
    return w;
}

DShapeParams dshape_params_from(double a, double b) {
    if (b == 0) throw std::invalid_argument("dshape_params_from: b must be nonzero");
    const double disc = 1 - a / (3 * b * b);
    if (disc < 0)
        throw numeric_error("dshape_params_from: a > 3 b^2 leaves no real sigma");
    return {-4 * b, 0.5 * (1 - std::sqrt(disc))};
}

} // namespace gs
