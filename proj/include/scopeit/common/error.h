// Copyright 2026 The ScopeIt Authors.
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

#ifndef SCOPEIT_COMMON_ERROR_H_
#define SCOPEIT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace scopeit {

// Root of every error the library raises. The CLI maps any Error escaping a
// subcommand to the data-error exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SCOPEIT_DEFINE_ERROR(Name)         \
  class Name : public ::scopeit::Error {   \
   public:                                 \
    using ::scopeit::Error::Error;         \
  }

// textprep
SCOPEIT_DEFINE_ERROR(MalformedPlaceholder);
SCOPEIT_DEFINE_ERROR(VocabularyError);

// nn
SCOPEIT_DEFINE_ERROR(ShapeMismatch);
SCOPEIT_DEFINE_ERROR(EmptySequence);
SCOPEIT_DEFINE_ERROR(LengthMismatch);
SCOPEIT_DEFINE_ERROR(FormatError);

// model
SCOPEIT_DEFINE_ERROR(MissingEmbedding);
SCOPEIT_DEFINE_ERROR(TokenCountMismatch);
SCOPEIT_DEFINE_ERROR(EmptySentence);
SCOPEIT_DEFINE_ERROR(EmptyCorpus);
SCOPEIT_DEFINE_ERROR(NonFiniteLoss);
SCOPEIT_DEFINE_ERROR(VocabularyMismatch);
SCOPEIT_DEFINE_ERROR(ConfigError);

// corpus
SCOPEIT_DEFINE_ERROR(SchemaError);
SCOPEIT_DEFINE_ERROR(LabelMisalignment);
SCOPEIT_DEFINE_ERROR(UnknownTag);

// augment
SCOPEIT_DEFINE_ERROR(EmptyCandidateList);
SCOPEIT_DEFINE_ERROR(SpecError);

// scoper / probe
SCOPEIT_DEFINE_ERROR(AlignmentError);
SCOPEIT_DEFINE_ERROR(EmptyIndex);

}  // namespace scopeit

#endif  // SCOPEIT_COMMON_ERROR_H_
