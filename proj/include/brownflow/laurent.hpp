#pragma once

#include <map>
#include <string>

#include "brownflow/types.hpp"

namespace brownflow {

// Finitely supported Laurent polynomial sum_k c_k u^k.
struct LaurentPoly {
    std::map<int, Complex> coeffs;

    static LaurentPoly constant(Complex c) { return monomial(0, c); }
    static LaurentPoly monomial(int k, Complex c = 1.0);

    LaurentPoly& add(int k, Complex c);
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator*(Complex c) const;

    Complex coeff(int k) const;
    bool empty() const { return coeffs.empty(); }
    Complex operator()(Complex z) const;
    // p(X); negative powers use an LU factorization of X
    ComplexMatrix apply(const ComplexMatrix& X) const;
    std::string str() const;

    // Parses terms like "u^2", "-0.5*u^-1 + 2" or "u2-u". Used by the CLI.
    static LaurentPoly parse(const std::string& text);
};

double max_coeff_distance(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace brownflow
