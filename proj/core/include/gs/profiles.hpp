#pragma once

// The free flux functions F(psi) and G(psi): parsing, canonical form
// recognition, and classification of the pair into the symmetry cases that
// make the Grad-Shafranov equation tractable.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gs/expr.hpp"

namespace gs {

enum class ProfileRole { F, G };

struct ZeroForm {};
struct AffineForm {
    double k0 = 0, k1 = 0; // k0 + k1*psi
};
struct PowerShiftedForm {
    double a = 1, c = 0, p = 1; // a*(psi+c)^p
};
struct ExponentialForm {
    double a = 1, c = 1; // a*exp(c*psi)
};
struct OpaqueForm {};

/// A parsed or constructed flux-function profile. Recognizable algebraic
/// shapes are canonicalized; anything else stays an opaque (but evaluable)
/// expression tree.
struct ProfileSpec {
    std::variant<ZeroForm, AffineForm, PowerShiftedForm, ExponentialForm, OpaqueForm> form;
    std::optional<Expr> ast; // original tree; always present for opaque forms
    ProfileRole role = ProfileRole::F;

    static ProfileSpec zero();
    static ProfileSpec affine(double k0, double k1);
    static ProfileSpec power_shifted(double a, double c, double p);
    static ProfileSpec exponential(double a, double c);
    static ProfileSpec opaque(Expr e);

    double operator()(double psi) const; ///< evaluate; throws domain_error outside the domain
    bool is_zero() const { return std::holds_alternative<ZeroForm>(form); }
    std::string print() const;

    const AffineForm* as_affine() const { return std::get_if<AffineForm>(&form); }
    const PowerShiftedForm* as_power() const { return std::get_if<PowerShiftedForm>(&form); }
    const ExponentialForm* as_exponential() const { return std::get_if<ExponentialForm>(&form); }
};

/// Parse profile text (grammar: literals, psi, + - * / ^, exp(), log(),
/// parentheses) and canonicalize the recognizable forms.
ProfileSpec parse_profile(const std::string& text, ProfileRole role = ProfileRole::F);

// ---------------------------------------------------------------------------
// Symmetry classification
// ---------------------------------------------------------------------------

enum class SymTag {
    A,             // F = a psi^(1+2/q), G = b psi^(1+1/q)
    APrime,        // shifted variant with psi+c
    ASecond,       // the exceptional case q = -1/4
    B,             // exponential pair
    CPrime,        // linear homogeneous
    CSecond,       // F const, G = b1 psi
    CThird,        // F = a1 psi, G const
    CFourth,       // remaining affine cases
    D,             // both constant (Solov'ev; recognized, no solver here)
    CondKappa,     // G = kappa^2 F
    CondRotation,  // F = 0, any G
    WeakSigma,     // power pair compatible with the weak-symmetry relations
    None
};

std::string to_string(SymTag tag);

struct TagInfo {
    SymTag tag = SymTag::None;
    std::map<std::string, double> params; // q, a, b, c, kappa, beta, sigma, A, ...
};

/// All applicable tags, most specific first. The classification has no
/// single-winner semantics; `primary()` is simply the first entry.
struct SymmetryClass {
    std::vector<TagInfo> tags;

    const TagInfo& primary() const;
    bool has(SymTag t) const;
    const TagInfo* find(SymTag t) const;
    bool is_none() const { return tags.empty() || tags.front().tag == SymTag::None; }
};

SymmetryClass classify(const ProfileSpec& F, const ProfileSpec& G);

// ---------------------------------------------------------------------------
// The weak-symmetry parameter relations (power family)
// ---------------------------------------------------------------------------

struct WeakFamily {
    ProfileSpec F, G;
    double a = 0, b = 0;
};

/// Build the profile pair F = a psi^(1+2/q), G = b psi^(1+1/q) whose
/// coefficients follow from (q, A, sigma):
///   a = 4 A^2 (sigma^2 - sigma) q (q+1),   b = 2 A q (2q+1).
/// sigma in {0, 1} is rejected (the first reduced equation trivializes).
WeakFamily weak_family(double q, double A, double sigma);

struct DShapeParams {
    double A = 0, sigma = 0;
};

/// Invert the q = -1/4 relations: given F = a psi^-7, G = b psi^-3 with
/// b != 0 and a <= 3 b^2, return A = -4b and
/// sigma = (1 - sqrt(1 - a/(3 b^2))) / 2.
DShapeParams dshape_params_from(double a, double b);

} // namespace gs
