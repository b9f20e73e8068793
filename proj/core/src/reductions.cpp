#include "gs/reductions.hpp"

#include <cmath>

#include "gs/errors.hpp"

namespace gs {

namespace {

double checked_pow(double w, double p) {
    if (w == 0 && p <= 0) throw numeric_error("reduced ODE: w^p at w = 0 with p <= 0");
    if (w < 0 && !is_integral_exponent(p))
        throw numeric_error("reduced ODE: fractional power of negative w");
    return std::pow(w, p);
}

} // namespace

std::string to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::X1Similarity: return "x1_similarity";
        case ReductionKind::Exceptional: return "exceptional";
        case ReductionKind::ExpCase: return "exp_case";
        case ReductionKind::CondKappa: return "cond_kappa";
        case ReductionKind::Rot: return "rot";
        case ReductionKind::WeakPair: return "weak_pair";
    }
    return "?";
}

double ReducedODE::param(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument("reduced ODE is missing parameter '" + key + "'");
    return it->second;
}

double ReducedODE::rhs(double y, double w, double wp) const {
    switch (kind) {
        case ReductionKind::X1Similarity: {
            const double q = param("q"), a = param("a"), b = param("b");
            const double y2 = y * y;
            const double rhs_terms = a * checked_pow(w, 1 + 2 / q) + b * checked_pow(w, 1 + 1 / q);
            return (rhs_terms - wp * (2 * y2 * y - 4 * q * y - y) - 4 * q * (q + 1) * w) /
                   (y2 + y2 * y2);
        }
        case ReductionKind::Exceptional: {
            const double a = param("a"), b = param("b");
            return (a * checked_pow(w, -7.0) + b * checked_pow(w, -3.0) + 0.75 * w) / (y * y);
        }
        case ReductionKind::ExpCase: {
            const double a = param("a"), b = param("b"), c = param("c");
            const double y2 = y * y;
            return (a * std::exp(2 * c * w) + b * std::exp(c * w) - 4 / c - wp * (2 * y2 * y - y)) /
                   (y2 + y2 * y2);
        }
        case ReductionKind::CondKappa:
            return F(w);
        case ReductionKind::Rot: {
            if (y == 0) throw numeric_error("rot reduction: singular point s = 0");
            return (G(w) - 2 * wp) / (4 * y);
        }
        case ReductionKind::WeakPair: {
            const double sigma = param("sigma");
            return F(w) / (4 * (sigma * sigma - sigma));
        }
    }
    return 0;
}

double ReducedODE::second_equation_residual(double s, double w, double wp) const {
    if (kind != ReductionKind::WeakPair)
        throw class_mismatch("second_equation_residual applies to the weak pair only");
    const double sigma = param("sigma");
    return s * F(w) / (sigma * sigma - sigma) + 2 * wp - G(w);
}

double ReducedODE::invariant(double r, double z) const {
    switch (kind) {
        case ReductionKind::X1Similarity:
        case ReductionKind::ExpCase:
            return std::abs(r / z);
        case ReductionKind::Exceptional:
            return r / (r * r + z * z);
        case ReductionKind::CondKappa:
            return 0.5 * r * r - param("kappa") * z;
        case ReductionKind::Rot:
            return r * r + z * z;
        case ReductionKind::WeakPair:
            return param("sigma") * r * r + z * z;
    }
    return 0;
}

bool ReducedODE::invariant_valid(double r, double z) const {
    if (r <= 0) return false;
    switch (kind) {
        case ReductionKind::X1Similarity:
        case ReductionKind::ExpCase:
            return z != 0;
        default:
            return true;
    }
}

double ReducedODE::reconstruct_value(double r, double w) const {
    switch (kind) {
        case ReductionKind::X1Similarity:
            return std::pow(r, -2 * param("q")) * w;
        case ReductionKind::Exceptional:
            return std::sqrt(r) * w;
        case ReductionKind::ExpCase:
            return -(2 / param("c")) * std::log(r) + w;
        default:
            return w;
    }
}

ReducedODE reduce(const TagInfo& tag, const ProfileSpec& F, const ProfileSpec& G) {
    ReducedODE ode;
    ode.F = F;
    ode.G = G;
    switch (tag.tag) {
        case SymTag::A:
        case SymTag::APrime: {
            const double c = tag.params.count("c") ? tag.params.at("c") : 0.0;
            if (c != 0)
                throw class_mismatch("x1 similarity reduction is implemented for c = 0 profiles");
            ode.kind = ReductionKind::X1Similarity;
            ode.params["q"] = tag.params.at("q");
            ode.params["a"] = tag.params.at("a");
            ode.params["b"] = tag.params.at("b");
            return ode;
        }
        case SymTag::ASecond: {
            const double c = tag.params.count("c") ? tag.params.at("c") : 0.0;
            if (c != 0)
                throw class_mismatch("exceptional reduction is implemented for c = 0 profiles");
            ode.kind = ReductionKind::Exceptional;
            ode.params["q"] = -0.25;
            ode.params["a"] = tag.params.at("a");
            ode.params["b"] = tag.params.at("b");
            return ode;
        }
        case SymTag::B: {
            ode.kind = ReductionKind::ExpCase;
            ode.params["a"] = tag.params.at("a");
            ode.params["b"] = tag.params.at("b");
            ode.params["c"] = tag.params.at("c");
            return ode;
        }
        case SymTag::CondKappa: {
            ode.kind = ReductionKind::CondKappa;
            ode.params["kappa"] = tag.params.at("kappa");
            return ode;
        }
        case SymTag::CondRotation: {
            ode.kind = ReductionKind::Rot;
            return ode;
        }
        case SymTag::WeakSigma: {
            ode.kind = ReductionKind::WeakPair;
            ode.params["sigma"] = tag.params.at("sigma");
            for (const char* k : {"q", "a", "b", "A"})
                if (tag.params.count(k)) ode.params[k] = tag.params.at(k);
            return ode;
        }
        default:
            throw class_mismatch("no reduction for class '" + to_string(tag.tag) + "'");
    }
}

ReducedODE reduce(const SymmetryClass& cls, const ProfileSpec& F, const ProfileSpec& G) {
    return reduce(cls.primary(), F, G);
}

OdeSolutionTable integrate_reduced(const ReducedODE& ode, double y0, double w0, double wp0,
                                   double y_end, const OdeOptions& opts) {
    return integrate_second_order([&ode](double y, double w, double wp) { return ode.rhs(y, w, wp); },
                                  y0, w0, wp0, y_end, opts);
}

OdeSolutionTable integrate_similarity_branch(const ReducedODE& ode, double eps, double y_end,
                                             const OdeOptions& opts) {
    if (ode.kind != ReductionKind::X1Similarity)
        throw class_mismatch("similarity branch start applies to the x1 similarity reduction");
    if (eps <= 0 || eps >= y_end) throw std::invalid_argument("branch start needs 0 < eps < y_end");
    const double q = ode.param("q");
    const double w0 = std::pow(eps, 2 * q + 2);
    const double wp0 = (2 * q + 2) * std::pow(eps, 2 * q + 1);
    return integrate_reduced(ode, eps, w0, wp0, y_end, opts);
}

GridField reconstruct(const ReducedODE& ode, const OdeSolutionTable& table, const GridSpec& grid) {
    GridField out(grid);
    int hits = 0;
    for (int j = 0; j < grid.nz; ++j) {
        for (int i = 0; i < grid.nr; ++i) {
            const double r = grid.r_at(i), z = grid.z_at(j);
            if (!ode.invariant_valid(r, z)) continue;
            const double y = ode.invariant(r, z);
            if (!table.covers(y)) continue;
            out.set(i, j, ode.reconstruct_value(r, table.interp_w(y)));
            ++hits;
        }
    }
    if (hits == 0)
        throw numeric_error("reconstruct: the grid does not overlap the integrated span");
    return out;
}

} // namespace gs
