#pragma once

#include <functional>

#include "billiard/poly.hpp"

namespace billiard::exact {

struct ZeroInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Determinant of the Sylvester matrix of p and q in v, by Bareiss fraction-free elimination.
FieldPoly sylvester_determinant(const FieldPoly& p, const FieldPoly& q, Var v);
// Primitive part of the above.
FieldPoly resultant(const FieldPoly& p, const FieldPoly& q, Var v);

// Res_v(A v^2 - C, e) for A, C free of v:
// A^n (E_e(C/A)^2 - (C/A) E_o(C/A)^2) with e = E_e(v^2) + v E_o(v^2), n = deg_v e, cleared of denominators.
// `reduce`, when given, is applied after every product (e.g. reduction modulo side relations).
using Reducer = std::function<FieldPoly(const FieldPoly&)>;
FieldPoly resultant_quadratic(const FieldPoly& e, const FieldPoly& A, const FieldPoly& C, Var v,
                              const Reducer& reduce = nullptr);

// Res over a field by the Euclidean remainder sequence.
FieldScalar uresultant(const UPoly& a, const UPoly& b);

// Res_v(e, f) where e only uses {x, v} and f only uses {y, v}: evaluated on a grid of
// rational points and interpolated.
FieldPoly resultant_separated(const FieldPoly& e, const FieldPoly& f, Var v);

}  // namespace billiard::exact
