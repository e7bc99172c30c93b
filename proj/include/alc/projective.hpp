#pragma once

#include <array>
#include <vector>

#include "alc/systems.hpp"

namespace alc {

struct ProjVars {
    int X = var_id("X");
    int Y = var_id("Y");
    int Z = var_id("Z");
    int U = var_id("U");
    int V = var_id("V");
    int W = var_id("W");
};
const ProjVars& pv();

class EulerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInvariant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// omega = A dX + B dY + C dZ with X A + Y B + Z C = 0.
struct ProjectiveOneForm {
    Poly A, B, C;
    std::array<int, 3> vars{var_id("X"), var_id("Y"), var_id("Z")};
    Poly scale = Poly(1);  // parameter factor used to clear coefficient denominators

    int degree() const;  // coefficient degree minus one
    bool euler_ok() const;
    bool is_zero() const { return A.is_zero() && B.is_zero() && C.is_zero(); }
    std::array<Poly, 3> coeffs() const { return {A, B, C}; }
};

// Builds a form and asserts the Euler condition.
ProjectiveOneForm make_form(const Poly& A, const Poly& B, const Poly& C, std::array<int, 3> vars);

struct VectorFieldRep {
    Poly L, M, N;
    Poly gauge = Poly(0);
};

ProjectiveOneForm projectivize(const AffineSystem& sys);
VectorFieldRep vector_field_from_form(const ProjectiveOneForm& w);
VectorFieldRep gauge_shift(const VectorFieldRep& r, const Poly& W, const std::array<int, 3>& vars);
// (A, B, C) = (MZ - NY, NX - LZ, LY - MX)
std::array<Poly, 3> form_of(const VectorFieldRep& r, const std::array<int, 3>& vars);

// Remove common factors among the candidates, in order, as many times as they divide.
ProjectiveOneForm strip_factors(const ProjectiveOneForm& w, const std::vector<Poly>& candidates,
                                std::vector<Poly>* removed = nullptr);
bool proportional(const ProjectiveOneForm& a, const ProjectiveOneForm& b);

using Line = std::array<mpq_class, 3>;  // a1 X + a2 Y + a3 Z

struct InvariantLines {
    std::vector<Line> lines;
    std::vector<Line> pencils;  // centers (p1 : p2 : p3) of dicritical pencils of invariant lines
};

// Form coefficients must be rational (parameters substituted).
InvariantLines find_invariant_lines(const ProjectiveOneForm& w);
bool line_invariant(const ProjectiveOneForm& w, const Line& l);

// Projectivity sending the line to Z = 0, divide A, B by the new Z, restrict to Z = 1.
AffineSystem affine_restrict(const ProjectiveOneForm& w, const Line& l);

}  // namespace alc
