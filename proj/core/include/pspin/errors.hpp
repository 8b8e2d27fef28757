#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace pspin {

enum class Errc {
  NonIncreasingExponents,
  WeightOutOfRange,
  WeightSumMismatch,
  DomainError,
  SingularCurvature,
  NonpositiveZ,
  DegenerateArguments,
  ChainNotStrict,
  ArgumentOrder,
  InvalidMeasure,
  NonMonotoneWeights,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Lightweight success-or-reason wrapper used by solvers and the classifier.
template <class T>
struct Result {
  std::optional<T> value;
  std::string error;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }
  T* operator->() { return &*value; }

  static Result success(T v) { return Result{std::move(v), {}}; }
  static Result failure(std::string why) { return Result{std::nullopt, std::move(why)}; }
};

}  // namespace pspin
