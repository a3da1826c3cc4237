#pragma once

#include "prodinfluence/rational.hpp"

#include <string>
#include <vector>

namespace prodinfluence {

/// Exactly evaluable function [0,1] -> [0,1] used to weight fibre section
/// measures. Two built-ins cover the standard choices: the strict-interior
/// indicator 1(0 < x < 1), which recovers the plain influence, and x(1-x).
/// Arbitrary piecewise polynomials with rational coefficients round out the
/// family.
class HFunction {
public:
    enum class Kind { Indicator01, QuadXOneMinusX, PiecewisePolynomial };

    static HFunction indicator01();
    static HFunction quad_x_one_minus_x();

    /// Piecewise polynomial on [0,1]. `breakpoints` must be strictly
    /// increasing from 0 to 1; piece i (coefficients in ascending degree)
    /// applies on [breakpoints[i], breakpoints[i+1]), the last piece also at 1.
    ///
    /// Range validation: pieces of degree <= 2 are checked exactly at their
    /// endpoints and interior extremum; higher degrees are sampled at the
    /// endpoints and 14 interior points per piece, and every later evaluation
    /// re-checks its own value, so an out-of-range function cannot slip a bad
    /// value into an influence.
    static HFunction piecewise_polynomial(std::vector<Rational> breakpoints,
                                          std::vector<std::vector<Rational>> pieces);

    /// Evaluates at x in [0,1]. Throws InputError if x is outside the domain
    /// or the value falls outside [0,1] (malformed piecewise input).
    Rational operator()(const Rational& x) const;

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<std::vector<Rational>>& pieces() const { return pieces_; }

    bool operator==(const HFunction&) const = default;

private:
    HFunction(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    std::vector<Rational> breakpoints_;            // piecewise only
    std::vector<std::vector<Rational>> pieces_;    // piecewise only
};

} // namespace prodinfluence
