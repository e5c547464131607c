#pragma once

// JSON reports shared by the command-line tool and the Python module.

#include "ellsurf/io.hpp"

namespace ellsurf {

/// Minimality verdict, chi, discriminant and fiber table. A non-minimal
/// input is minimized first and the minimal model is included.
Json analyze_report(const WeierstrassModel& m);

/// Torsion over Q (constant curves) or over k(t) for a curve of the shape
/// y^2 = x (x - f^2)(x - g^2) (UnsupportedInput otherwise).
TorsionReport torsion_of(const WeierstrassModel& m, bool over_q);

enum class FamilyCertificate { None, Qbar, Qt };

/// The triple, its curve and canonical points, or one of the certificates.
/// `passed` is false only when a requested certificate failed.
Json family_report(const PythagoreanTriple& t, FamilyCertificate mode, bool& passed);

/// Descent images of points on the family curve and their independence.
Json descent_report(const PythagoreanTriple& t, const std::vector<CurvePoint>& points);

}  // namespace ellsurf
