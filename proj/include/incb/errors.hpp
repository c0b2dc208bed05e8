#pragma once

#include <stdexcept>
#include <string>

namespace incb {

struct NonInvertible : std::domain_error {
  explicit NonInvertible(const std::string& what) : std::domain_error(what) {}
};

struct SizeLimit : std::domain_error {
  explicit SizeLimit(const std::string& what) : std::domain_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotComparable : std::invalid_argument {
  explicit NotComparable(const std::string& what) : std::invalid_argument(what) {}
};

struct EvenInput : std::invalid_argument {
  explicit EvenInput(const std::string& what) : std::invalid_argument(what) {}
};

struct NoZeroBlock : std::invalid_argument {
  explicit NoZeroBlock(const std::string& what) : std::invalid_argument(what) {}
};

struct BlockNotInPartition : std::invalid_argument {
  explicit BlockNotInPartition(const std::string& what) : std::invalid_argument(what) {}
};

struct AlphabetMismatch : std::invalid_argument {
  explicit AlphabetMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct RelationViolation : std::invalid_argument {
  explicit RelationViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct DegreeOverflow : std::domain_error {
  explicit DegreeOverflow(const std::string& what) : std::domain_error(what) {}
};

struct IncompleteSpec : std::invalid_argument {
  explicit IncompleteSpec(const std::string& what) : std::invalid_argument(what) {}
};

struct AlphabetCollision : std::invalid_argument {
  explicit AlphabetCollision(const std::string& what) : std::invalid_argument(what) {}
};

struct IncompleteInput : std::invalid_argument {
  explicit IncompleteInput(const std::string& what) : std::invalid_argument(what) {}
};

struct PreconditionViolated : std::domain_error {
  explicit PreconditionViolated(const std::string& what) : std::domain_error(what) {}
};

struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace incb
