#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace outerprod {

// Malformed user-supplied data: dimension mismatch, non-finite coordinate,
// unparseable vector or norm string.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration: p-norm order <= 1, non-positive tolerance, ...
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A standing hypothesis of the bound statements is violated. Carries the
// names of the violated hypotheses.
class hypothesis_error : public input_error {
 public:
  hypothesis_error(const std::string& what, std::vector<std::string> failures)
      : input_error(what), failures_(std::move(failures)) {}

  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

// Adaptive quadrature ran out of depth before reaching the requested
// tolerance. Not a silent best-effort number: the best estimate and the
// achieved error bound travel with the error.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

// The rejection sampler hit its attempt cap; signals a mis-configured
// coord_scale rather than bad luck.
class sampler_exhausted_error : public config_error {
 public:
  explicit sampler_exhausted_error(const std::string& what) : config_error(what) {}
};

}  // namespace outerprod
