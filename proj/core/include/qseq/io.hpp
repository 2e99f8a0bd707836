// Copyright 2026 The qseq Authors
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


#ifndef QSEQ_IO_HPP_
#define QSEQ_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qseq/channel.hpp"
#include "qseq/conic.hpp"
#include "qseq/dilation.hpp"
#include "qseq/errors.hpp"
#include "qseq/linalg.hpp"
#include "qseq/povm.hpp"
#include "qseq/universal.hpp"

namespace qseq::io {

using Json = nlohmann::json;

/// Malformed input. `pointer()` is the JSON pointer of the offending node
/// ("" for the document root).
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& message);
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Matrices are nested row-major arrays of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& pointer = "");

Json povm_to_json(const Povm& p);
Json povm_to_json(const ProductLabeledPovm& p);
Povm povm_from_json(const Json& j, const std::string& pointer = "");
/// Reads a POVM whose labels split into factors of the given arities. When
/// the document carries "factor_arity" that list is used instead.
ProductLabeledPovm product_povm_from_json(const Json& j,
                                          std::vector<std::size_t> arities = {},
                                          const std::string& pointer = "");

/// Partition keys are comma-separated integers, e.g. "1" or "1,-1".
std::string partition_key(const Label& label);
Label parse_partition_key(const std::string& key, const std::string& pointer = "");

Json channel_to_json(const KrausChannel& c);
KrausChannel channel_from_json(const Json& j, const std::string& pointer = "");

Json dilation_to_json(const NaimarkDilation& d);
NaimarkDilation dilation_from_json(const Json& j, const std::string& pointer = "");

/// The witness is written only when `with_witness` is set and present.
Json outcome_to_json(const FeasibilityOutcome& o, bool with_witness = true);

Json scheme_to_json(const SequentialScheme& s);

/// True when the document looks like a channel (has "kraus"), false for a
/// POVM (has "outcomes"); SchemaError otherwise.
bool is_channel_document(const Json& j);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace qseq::io

#endif  // QSEQ_IO_HPP_
