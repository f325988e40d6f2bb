#pragma once

// Error taxonomy.  Exceptions carry a category that the CLI maps onto its
// stable exit codes: input errors -> 2, insufficient data -> 3,
// certification failures -> 4.

#include <stdexcept>
#include <string>

namespace orthospec {

enum class error_category : int {
    input = 2,          // malformed specs, domain errors on user input
    insufficient = 3,   // not enough data to answer (cutoffs, fits)
    certification = 4,  // certificates unavailable or violated
};

class error : public std::runtime_error {
  public:
    error(error_category cat, const std::string& what)
        : std::runtime_error(what), category_(cat) {}
    error_category category() const { return category_; }

  private:
    error_category category_;
};

// Inputs outside an operation's mathematical domain (l <= 0, x outside (0,1)).
class domain_error : public error {
  public:
    explicit domain_error(const std::string& what)
        : error(error_category::input, what) {}
};

// geodesic_distance on geodesics sharing an endpoint: not distance 0,
// a distinct condition (perpendiculars require disjoint closures).
class asymptotic_error : public domain_error {
  public:
    explicit asymptotic_error(const std::string& what) : domain_error(what) {}
};

// geodesic_distance on crossing geodesics.
class intersecting_error : public domain_error {
  public:
    explicit intersecting_error(const std::string& what)
        : domain_error(what) {}
};

// Malformed surface/spectrum specs and files.
class spec_error : public error {
  public:
    explicit spec_error(const std::string& what)
        : error(error_category::input, what) {}
};

// Numerical construction failures (gluing isometry not found, ...).
class construction_error : public error {
  public:
    explicit construction_error(const std::string& what)
        : error(error_category::input, what) {}
};

// Certification failures: unstable Dirichlet domain, uncertified spectra
// where certification is required, discreteness violations.
class certification_error : public error {
  public:
    explicit certification_error(const std::string& what)
        : error(error_category::certification, what) {}
};

// Not enough data: cutoff too small, too few points for a fit, systole cap.
class insufficient_data_error : public error {
  public:
    explicit insufficient_data_error(const std::string& what)
        : error(error_category::insufficient, what) {}
};

}  // namespace orthospec
