#include "brownflow/laurent.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace brownflow {

LaurentPoly LaurentPoly::monomial(int k, Complex c) {
    LaurentPoly p;
    p.add(k, c);
    return p;
}

LaurentPoly& LaurentPoly::add(int k, Complex c) {
    const Complex v = coeff(k) + c;
    if (v == Complex(0.0))
        coeffs.erase(k);
    else
        coeffs[k] = v;
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [k, c] : o.coeffs) r.add(k, c);
    return r;
}

LaurentPoly LaurentPoly::operator*(Complex c) const {
    LaurentPoly r;
    for (const auto& [k, v] : coeffs) r.add(k, v * c);
    return r;
}

Complex LaurentPoly::coeff(int k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? Complex(0.0) : it->second;
}

Complex LaurentPoly::operator()(Complex z) const {
    Complex s = 0.0;
    for (const auto& [k, c] : coeffs) s += c * std::pow(z, k);
    return s;
}

ComplexMatrix LaurentPoly::apply(const ComplexMatrix& X) const {
    const Eigen::Index n = X.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    if (coeffs.empty()) return out;
    const ComplexMatrix I = ComplexMatrix::Identity(n, n);
    const int kmax = coeffs.rbegin()->first;
    const int kmin = coeffs.begin()->first;
    if (kmax >= 0) {
        ComplexMatrix P = I;
        for (int k = 0; k <= kmax; ++k) {
            if (k > 0) P = P * X;
            if (auto it = coeffs.find(k); it != coeffs.end()) out += it->second * P;
        }
    }
    if (kmin < 0) {
        Eigen::PartialPivLU<ComplexMatrix> lu(X);
        if (lu.rcond() < 1e-12) throw SingularPointError("negative power of a near-singular matrix");
        ComplexMatrix P = I;
        for (int k = -1; k >= kmin; --k) {
            P = lu.solve(P);
            if (auto it = coeffs.find(k); it != coeffs.end()) out += it->second * P;
        }
    }
    return out;
}

std::string LaurentPoly::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const Complex c = it->second;
        if (c.imag() == 0.0)
            os << c.real();
        else
            os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        if (it->first != 0) os << "*z^" << it->first;
    }
    return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
    LaurentPoly p;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ValidationError("empty polynomial");
    std::size_t i = 0;
    auto fail = [&] { throw ValidationError("cannot parse polynomial '" + text + "'"); };
    while (i < s.size()) {
        double sign = 1.0;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1.0 : 1.0;
            ++i;
        } else if (i != 0) {
            fail();
        }
        double c = 1.0;
        bool have_coeff = false;
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
            std::size_t used = 0;
            c = std::stod(s.substr(i), &used);
            i += used;
            have_coeff = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        int k = 0;
        if (i < s.size() && (s[i] == 'u' || s[i] == 'z' || s[i] == 'w')) {
            ++i;
            k = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t used = 0;
                try {
                    k = std::stoi(s.substr(i), &used);
                } catch (const std::exception&) {
                    fail();
                }
                i += used;
            }
        } else if (!have_coeff) {
            fail();
        }
        p.add(k, sign * c);
    }
    return p;
}

double max_coeff_distance(const LaurentPoly& a, const LaurentPoly& b) {
    double d = 0.0;
    for (const auto& [k, c] : a.coeffs) d = std::max(d, std::abs(c - b.coeff(k)));
    for (const auto& [k, c] : b.coeffs) d = std::max(d, std::abs(c - a.coeff(k)));
    return d;
}

}  // namespace brownflow
