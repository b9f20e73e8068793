#include "gs/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gs/errors.hpp"

namespace gs {

namespace {

Expr cst(double v) { return Expr::constant(v); }
Expr vr() { return Expr::variable(ExprVar::R); }
Expr vz() { return Expr::variable(ExprVar::Z); }
Expr vpsi() { return Expr::variable(ExprVar::Psi); }

// power-family tag (a / a' / a'') matching the requested (q, c)
const TagInfo* power_tag(const SymmetryClass& cls, double q, double c, std::string& why) {
    for (SymTag t : {SymTag::ASecond, SymTag::A, SymTag::APrime}) {
        if (const TagInfo* ti = cls.find(t)) {
            const double tq = ti->params.at("q");
            const double tc = ti->params.count("c") ? ti->params.at("c") : 0.0;
            if (std::abs(tq - q) <= 1e-9 * std::max(1.0, std::abs(q)) &&
                std::abs(tc - c) <= 1e-9 * std::max(1.0, std::abs(c)))
                return ti;
            why = "profile pair is in the power family but with q = " + std::to_string(tq) +
                  ", c = " + std::to_string(tc);
            return nullptr;
        }
    }
    why = "profile pair is not in the power family";
    return nullptr;
}

} // namespace

Expr PointGenerator::apply(const Expr& f) const {
    return xi_r * f.diff(ExprVar::R) + xi_z * f.diff(ExprVar::Z) + eta * f.diff(ExprVar::Psi);
}

namespace generators {

PointGenerator z_translate() { return {cst(0), cst(1), cst(0), "Z_TRANSLATE"}; }
PointGenerator scale_psi() { return {cst(0), cst(0), vpsi(), "SCALE_PSI"}; }
PointGenerator scale_rz() { return {vr(), vz(), cst(0), "SCALE_RZ"}; }

PointGenerator x1(double q) {
    return {vr(), vz(), cst(-2 * q) * vpsi(), "X1(q=" + std::to_string(q) + ")"};
}

PointGenerator x1_prime(double q, double c) {
    return {vr(), vz(), cst(-2 * q) * (vpsi() + cst(c)),
            "X1'(q=" + std::to_string(q) + ",c=" + std::to_string(c) + ")"};
}

PointGenerator x_second(double c) {
    return {cst(2) * vr() * vz(), vz() * vz() - vr() * vr(), vz() * (vpsi() + cst(c)),
            "X''(c=" + std::to_string(c) + ")"};
}

PointGenerator x2(double c) {
    if (c == 0) throw std::invalid_argument("X2 requires c != 0");
    return {vr(), vz(), cst(-2 / c), "X2(c=" + std::to_string(c) + ")"};
}

PointGenerator y_cond_kappa(double kappa) {
    return {cst(kappa), vr(), cst(0), "Y_COND_KAPPA(kappa=" + std::to_string(kappa) + ")"};
}

PointGenerator y_rot() { return {vz(), -vr(), cst(0), "Y_ROT"}; }

PointGenerator y_weak(double sigma) {
    return {vz(), cst(-sigma) * vr(), cst(0), "Y_WEAK(sigma=" + std::to_string(sigma) + ")"};
}

} // namespace generators

PointGenerator commutator(const PointGenerator& V, const PointGenerator& W) {
    PointGenerator out;
    out.xi_r = V.apply(W.xi_r) - W.apply(V.xi_r);
    out.xi_z = V.apply(W.xi_z) - W.apply(V.xi_z);
    out.eta = V.apply(W.eta) - W.apply(V.eta);
    out.label = "[" + V.label + ", " + W.label + "]";
    return out;
}

PointGenerator scaled(double factor, const PointGenerator& V) {
    return {cst(factor) * V.xi_r, cst(factor) * V.xi_z, cst(factor) * V.eta,
            std::to_string(factor) + "*" + V.label};
}

bool generators_equal(const PointGenerator& V, const PointGenerator& W, int n, double tol,
                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.5, 2.0), uz(-1.0, 1.0), up(0.5, 2.0);
    for (int i = 0; i < n; ++i) {
        const double r = ur(rng), z = uz(rng), psi = up(rng);
        for (auto comp : {&PointGenerator::xi_r, &PointGenerator::xi_z, &PointGenerator::eta}) {
            const double dv = (V.*comp).eval(r, z, psi) - (W.*comp).eval(r, z, psi);
            if (std::abs(dv) > tol) return false;
        }
    }
    return true;
}

double invariance_defect(const PointGenerator& V, const ClosedFormSolution& s, double r, double z) {
    const Jet j = s.eval(r, z);
    const double xr = V.xi_r.eval(r, z, j.v);
    const double xz = V.xi_z.eval(r, z, j.v);
    const double eta = V.eta.eval(r, z, j.v);
    return eta - xr * j.dr - xz * j.dz;
}

// ---------------------------------------------------------------------------
// Finite maps
// ---------------------------------------------------------------------------

ClosedFormSolution scaling_map(const ClosedFormSolution& s, double lambda, double q, double c) {
    std::string why;
    if (!power_tag(classify(s.F, s.G), q, c, why))
        throw class_mismatch("scaling_map: " + why);

    const double el = std::exp(lambda);
    const double amp = std::exp(2 * lambda * q);
    const auto base_eval = s.evaluator;
    const auto base_domain = s.domain;

    ClosedFormSolution out = s;
    out.evaluator = [el, amp, c, base_eval](double r, double z) {
        const Jet u(el * r, el, 0, 0, 0, 0);
        const Jet v(el * z, 0, el, 0, 0, 0);
        const Jet inner = base_eval(u.v, v.v);
        return amp * compose2(inner, u, v) + c * (amp - 1);
    };
    out.domain = [el, base_domain](double r, double z) { return base_domain(el * r, el * z); };
    out.box = {s.box.r0 / el, s.box.r1 / el, s.box.z0 / el, s.box.z1 / el};
    out.derivation = "scaling_map(lambda=" + std::to_string(lambda) + ") of " + to_string(s.family);
    return out;
}

ClosedFormSolution exceptional_map(const ClosedFormSolution& s, double lambda) {
    const SymmetryClass cls = classify(s.F, s.G);
    const TagInfo* tag = cls.find(SymTag::ASecond);
    if (!tag)
        throw class_mismatch("exceptional_map: profile pair is not the exceptional case (q = -1/4)");
    const double c = tag->params.count("c") ? tag->params.at("c") : 0.0;

    const auto base_eval = s.evaluator;
    const auto base_domain = s.domain;

    auto point_map = [lambda](double r, double z, double& rt, double& zt, double& C) {
        const double rho2 = r * r + z * z;
        C = 1 + lambda * lambda * rho2 + 2 * lambda * z;
        if (C <= 0) return false;
        rt = r / C;
        zt = (z + lambda * rho2) / C;
        return true;
    };

    ClosedFormSolution out = s;
    out.evaluator = [lambda, c, base_eval](double r, double z) {
        const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
        const Jet rho2 = R * R + Z * Z;
        const Jet C = 1.0 + (lambda * lambda) * rho2 + (2 * lambda) * Z;
        if (C.v <= 0) throw domain_error("exceptional_map: C(r, z) <= 0");
        const Jet rt = R / C;
        const Jet zt = (Z + lambda * rho2) / C;
        const Jet g = base_eval(rt.v, zt.v) + c; // psi + c conjugation
        return sqrt(C) * compose2(g, rt, zt) - c;
    };
    out.domain = [point_map, base_domain](double r, double z) {
        double rt, zt, C;
        return point_map(r, z, rt, zt, C) && base_domain(rt, zt);
    };

    // Bound the preimage of the seed box through the inverse map (lambda -> -lambda).
    {
        auto inverse = [lambda](double u, double v, double& r, double& z) {
            const double rho2 = u * u + v * v;
            const double C = 1 + lambda * lambda * rho2 - 2 * lambda * v;
            if (C <= 0) return false;
            r = u / C;
            z = (v - lambda * rho2) / C;
            return true;
        };
        double r0 = 1e300, r1 = -1e300, z0 = 1e300, z1 = -1e300;
        const int n = 60;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const double u = s.box.r0 + (s.box.r1 - s.box.r0) * i / n;
                const double v = s.box.z0 + (s.box.z1 - s.box.z0) * j / n;
                if (!base_domain(u, v)) continue;
                double r, z;
                if (!inverse(u, v, r, z) || r <= 0) continue;
                r0 = std::min(r0, r); r1 = std::max(r1, r);
                z0 = std::min(z0, z); z1 = std::max(z1, z);
            }
        }
        if (r0 < r1 && z0 < z1)
            out.box = {r0, r1, z0, z1};
    }
    out.derivation = "exceptional_map(lambda=" + std::to_string(lambda) + ") of " + to_string(s.family);
    return out;
}

ClosedFormSolution exp_case_map(const ClosedFormSolution& s, double lambda) {
    const SymmetryClass cls = classify(s.F, s.G);
    const TagInfo* tag = cls.find(SymTag::B);
    if (!tag) throw class_mismatch("exp_case_map: profile pair is not the exponential case");
    const double c = tag->params.at("c");

    const double el = std::exp(lambda);
    const auto base_eval = s.evaluator;
    const auto base_domain = s.domain;

    ClosedFormSolution out = s;
    out.evaluator = [el, lambda, c, base_eval](double r, double z) {
        const Jet u(el * r, el, 0, 0, 0, 0);
        const Jet v(el * z, 0, el, 0, 0, 0);
        return compose2(base_eval(u.v, v.v), u, v) + 2 * lambda / c;
    };
    out.domain = [el, base_domain](double r, double z) { return base_domain(el * r, el * z); };
    out.box = {s.box.r0 / el, s.box.r1 / el, s.box.z0 / el, s.box.z1 / el};
    out.derivation = "exp_case_map(lambda=" + std::to_string(lambda) + ") of " + to_string(s.family);
    return out;
}

} // namespace gs
