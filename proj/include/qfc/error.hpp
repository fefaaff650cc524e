#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfc {

enum class Errc {
  NotPrime,
  ZeroInverse,
  EmptyInterval,
  DegenerateForm,
  ReducibleModP,
  SmallPrime,
  GuardExceeded,
  NotFound,
  RegimeOverflow,
  InversionMismatch,
  NotSquareFree,
  DTooSmall,
  NotApplicable,
  FactorizationTimeout,
  DifferentBranch,
  NotOnConic,
  PipelineMismatch,
  Underdetermined,
  BadConfig,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure in the library surfaces as this exception; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::EmptyInterval: return "EmptyInterval";
    case Errc::DegenerateForm: return "DegenerateForm";
    case Errc::ReducibleModP: return "ReducibleModP";
    case Errc::SmallPrime: return "SmallPrime";
    case Errc::GuardExceeded: return "GuardExceeded";
    case Errc::NotFound: return "NotFound";
    case Errc::RegimeOverflow: return "RegimeOverflow";
    case Errc::InversionMismatch: return "InversionMismatch";
    case Errc::NotSquareFree: return "NotSquareFree";
    case Errc::DTooSmall: return "DTooSmall";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::FactorizationTimeout: return "FactorizationTimeout";
    case Errc::DifferentBranch: return "DifferentBranch";
    case Errc::NotOnConic: return "NotOnConic";
    case Errc::PipelineMismatch: return "PipelineMismatch";
    case Errc::Underdetermined: return "Underdetermined";
    case Errc::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace qfc
