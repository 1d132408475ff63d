// Copyright 2026 The arbac-reach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARBAC_ERRORS_HPP_
#define ARBAC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace arbac {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ARBAC_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

ARBAC_DEFINE_ERROR(SortError);
ARBAC_DEFINE_ERROR(NegativeUaStar);
ARBAC_DEFINE_ERROR(CyclicHierarchy);
ARBAC_DEFINE_ERROR(UndeclaredConstant);
ARBAC_DEFINE_ERROR(BoundTooSmall);
ARBAC_DEFINE_ERROR(ParseError);
ARBAC_DEFINE_ERROR(InconsistentTheory);
ARBAC_DEFINE_ERROR(SolverTimeout);
ARBAC_DEFINE_ERROR(InternalError);
ARBAC_DEFINE_ERROR(UninterpretedConstant);
ARBAC_DEFINE_ERROR(StateSpaceCap);
ARBAC_DEFINE_ERROR(HierarchyPresent);
ARBAC_DEFINE_ERROR(UnsupportedInstance);

#undef ARBAC_DEFINE_ERROR

}  // namespace arbac

#endif  // ARBAC_ERRORS_HPP_
