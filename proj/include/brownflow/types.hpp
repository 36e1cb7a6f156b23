#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace brownflow {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Base of every library failure. The CLI maps ValidationError to exit code 1
// and everything else derived from Error to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class SingularPointError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    OverflowError(const std::string& what, double exponent)
        : Error(what), exponent_(exponent) {}
    double exponent() const { return exponent_; }

private:
    double exponent_;
};

class ContinuationError : public Error {
public:
    ContinuationError(const std::string& what, Complex last)
        : Error(what), last_(last) {}
    Complex last_iterate() const { return last_; }

private:
    Complex last_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class TopologyError : public Error {
public:
    using Error::Error;
};

class StepSizeError : public Error {
public:
    using Error::Error;
};

class EigenError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class AccuracyError : public Error {
public:
    using Error::Error;
};

// s is the outer time, t the inner one. One-parameter objects use s == t.
struct TimeParams {
    double s = 1.0;
    double t = 1.0;

    static TimeParams one(double t) { return {t, t}; }
    bool single() const { return s == t; }
    void validate() const;
};

}  // namespace brownflow
