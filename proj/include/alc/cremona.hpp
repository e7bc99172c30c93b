#pragma once

#include <array>
#include <string>
#include <vector>

#include "alc/projective.hpp"

namespace alc {

enum class CremonaKind { C1, C2, C3 };
const char* cremona_kind_name(CremonaKind k);

struct BasePoint {
    std::array<mpq_class, 3> coords{};  // proper points; for infinitely near ones the coords of the root
    int parent = -1;                    // index of the point it lies over, -1 if proper
    std::string direction;              // tangent direction for infinitely near points
};

// Forward map in (X, Y, Z) -> (U, V, W); inverse in (U, V, W) -> (X, Y, Z).
struct CremonaMap {
    CremonaKind kind = CremonaKind::C1;
    mpq_class c = 0;  // C3 only
    std::array<Poly, 3> forward;
    std::array<Poly, 3> inverse;
    std::vector<BasePoint> base_cluster;
    std::vector<Poly> contractile_inverse;  // in U, V, W
    std::vector<Poly> contractile_forward;  // in X, Y, Z
};

CremonaMap normal_form(CremonaKind kind, std::optional<mpq_class> c = std::nullopt);

// Rename (U, V, W) -> (X, Y, Z) so results can be fed back in.
Poly uvw_to_xyz(const Poly& f);
ProjectiveOneForm uvw_to_xyz(const ProjectiveOneForm& w);

// G(inverse) with contractile factors stripped; result in (U, V, W).
Poly direct_image_curve(const CremonaMap& m, const Poly& G, std::vector<Poly>* removed = nullptr);
// Pull back along the inverse map with the chain rule and strip common factors; result in (U, V, W).
ProjectiveOneForm pullback_form(const CremonaMap& m, const ProjectiveOneForm& w, std::vector<Poly>* removed = nullptr);

// Hypotheses a00 = b00 = 0, a02 = 0, b02 = 2 a11 on the quadratic coefficients.
std::vector<std::string> c2a_hypothesis_failures(const AffineSystem& sys);
// x' = x^3 p(1/x, y/x^2), y' = 2 x^2 y p(1/x, y/x^2) - x^3 q(1/x, y/x^2).
AffineSystem transform_c2a(const AffineSystem& sys);
// Affine image of a curve: x^(2 deg f) f(1/x, y/x^2) with powers of x removed.
RationalFn c2a_curve(const RationalFn& f);
// Curve image with cofactor recomputed on the transformed system and verified.
InvariantCurve c2a_invariant_curve(const AffineSystem& transformed, const InvariantCurve& c);

// Form-level transform for systems outside the hypotheses: projectivize, pull back by C2,
// restrict at the invariant line W = 0.
AffineSystem c2_general(const AffineSystem& sys, int* form_degree = nullptr);

}  // namespace alc
