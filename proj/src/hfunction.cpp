#include "prodinfluence/hfunction.hpp"

#include "prodinfluence/errors.hpp"

#include <algorithm>

namespace prodinfluence {

namespace {

Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational value = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        value = value * x + *it;
    }
    return value;
}

void require_in_unit_range(const Rational& value, const Rational& x) {
    if (value < 0 || value > 1) {
        throw InputError("h(" + to_fraction_string(x) + ") = " + to_fraction_string(value) +
                         " falls outside [0,1]; malformed piecewise polynomial");
    }
}

void validate_piece_range(const std::vector<Rational>& coeffs, const Rational& lo,
                          const Rational& hi) {
    require_in_unit_range(eval_poly(coeffs, lo), lo);
    require_in_unit_range(eval_poly(coeffs, hi), hi);
    const std::size_t degree = coeffs.empty() ? 0 : coeffs.size() - 1;
    if (degree == 2 && coeffs[2] != 0) {
        // Exact interior extremum of a quadratic.
        const Rational vertex = -coeffs[1] / (2 * coeffs[2]);
        if (lo < vertex && vertex < hi) {
            require_in_unit_range(eval_poly(coeffs, vertex), vertex);
        }
        return;
    }
    if (degree >= 3) {
        // Sampled check only; operator() re-validates every value it returns.
        const int samples = 14;
        for (int i = 1; i <= samples; ++i) {
            const Rational x = lo + (hi - lo) * Rational(i, samples + 1);
            require_in_unit_range(eval_poly(coeffs, x), x);
        }
    }
}

} // namespace

HFunction HFunction::indicator01() {
    return HFunction(Kind::Indicator01, "indicator01");
}

HFunction HFunction::quad_x_one_minus_x() {
    return HFunction(Kind::QuadXOneMinusX, "quad_x_one_minus_x");
}

HFunction HFunction::piecewise_polynomial(std::vector<Rational> breakpoints,
                                          std::vector<std::vector<Rational>> pieces) {
    if (breakpoints.size() < 2 || breakpoints.size() != pieces.size() + 1) {
        throw InputError("piecewise polynomial needs m+1 breakpoints for m >= 1 pieces");
    }
    if (breakpoints.front() != 0 || breakpoints.back() != 1) {
        throw InputError("piecewise breakpoints must start at 0 and end at 1");
    }
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
        std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end()) {
        throw InputError("piecewise breakpoints must be strictly increasing");
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        validate_piece_range(pieces[i], breakpoints[i], breakpoints[i + 1]);
    }
    HFunction h(Kind::PiecewisePolynomial, "piecewise");
    h.breakpoints_ = std::move(breakpoints);
    h.pieces_ = std::move(pieces);
    return h;
}

Rational HFunction::operator()(const Rational& x) const {
    if (x < 0 || x > 1) {
        throw InputError("h evaluated outside [0,1] at " + to_fraction_string(x));
    }
    switch (kind_) {
    case Kind::Indicator01:
        return (x > 0 && x < 1) ? 1 : 0;
    case Kind::QuadXOneMinusX:
        return x * (1 - x);
    case Kind::PiecewisePolynomial: {
        // Piece i covers [b_i, b_{i+1}); x = 1 belongs to the last piece.
        const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        std::size_t index = static_cast<std::size_t>(it - breakpoints_.begin());
        index = index == 0 ? 0 : index - 1;
        index = std::min(index, pieces_.size() - 1);
        const Rational value = eval_poly(pieces_[index], x);
        require_in_unit_range(value, x);
        return value;
    }
    }
    throw InternalError("unreachable h-function kind");
}

} // namespace prodinfluence
