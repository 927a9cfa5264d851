#pragma once

#include <stdexcept>
#include <string>

namespace grpder {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAGroup : public Error {
 public:
  enum class Reason { NoIdentityAtZero, NotLatin, NotAssociative, NoInverse, Malformed };

  NotAGroup(Reason reason, const std::string& detail)
      : Error("not a group (" + reason_name(reason) + "): " + detail), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

  static std::string reason_name(Reason r) {
    switch (r) {
      case Reason::NoIdentityAtZero: return "no-identity-at-0";
      case Reason::NotLatin: return "not-latin";
      case Reason::NotAssociative: return "not-associative";
      case Reason::NoInverse: return "no-inverse";
      case Reason::Malformed: return "malformed";
    }
    return "unknown";
  }

 private:
  Reason reason_;
};

class OrderTooLarge : public Error { using Error::Error; };
class UnknownGroupName : public Error { using Error::Error; };
class MixedRings : public Error { using Error::Error; };
class MixedGroups : public Error { using Error::Error; };
class NotAField : public Error { using Error::Error; };
class NotAHomomorphism : public Error { using Error::Error; };
class NotAUnit : public Error { using Error::Error; };
class NotADerivation : public Error { using Error::Error; };
class NotCentral : public Error { using Error::Error; };
class NotAWitness : public Error { using Error::Error; };
class NotAbelian : public Error { using Error::Error; };
class DifferenceNotAUnit : public Error { using Error::Error; };
class NotAnAutomorphism : public Error { using Error::Error; };
class AbelianBase : public Error { using Error::Error; };
class NotClassPreserving : public Error { using Error::Error; };
class CentralChoice : public Error { using Error::Error; };
/// The chosen element induces the zero inner derivation on its factor.
class TrivialInnerChoice : public Error { using Error::Error; };
class TruncationTooLarge : public Error { using Error::Error; };
class Cancelled : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };

class NotMultiplicative : public Error {
 public:
  NotMultiplicative(int i, int j)
      : Error("images are not multiplicative at basis pair (" + std::to_string(i) + ", " +
              std::to_string(j) + ")"),
        i_(i), j_(j) {}
  int first() const noexcept { return i_; }
  int second() const noexcept { return j_; }

 private:
  int i_, j_;
};

}  // namespace grpder
