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

#include "qseq/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace qseq::io {
namespace {

std::string child(const std::string& pointer, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

const Json& member(const Json& j, const char* key, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(pointer, std::string("missing member \"") + key + "\"");
  }
  return *it;
}

std::size_t count_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaError(pointer, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

double number_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_number()) throw SchemaError(pointer, "expected a number");
  return j.get<double>();
}

Label label_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(pointer, "expected a non-empty array of integers");
  }
  Label label;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) {
      throw SchemaError(child(pointer, i), "expected an integer");
    }
    label.push_back(j[i].get<int>());
  }
  return label;
}

std::vector<std::size_t> arities_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array of counts");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(count_from_json(j[i], child(pointer, i)));
  }
  return out;
}

// Library errors raised while assembling an object from valid JSON shapes
// (duplicate labels, bad partitions) are reported at the object's pointer.
template <typename Fn>
auto rethrow_at(const std::string& pointer, Fn&& fn) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(pointer, e.what());
  }
}

}  // namespace

SchemaError::SchemaError(std::string pointer, const std::string& message)
    : Error((pointer.empty() ? std::string("<root>") : pointer) + ": " + message),
      pointer_(std::move(pointer)) {}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(pointer, "expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = child(pointer, r);
    if (!j[r].is_array() || j[r].empty()) {
      throw SchemaError(rp, "expected a non-empty array of [re, im] pairs");
    }
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) throw SchemaError(rp, "row length differs from row 0");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& entry = j[r][c];
      const std::string ep = child(child(pointer, r), c);
      if (!entry.is_array() || entry.size() != 2) {
        throw SchemaError(ep, "expected an [re, im] pair");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(number_from_json(entry[0], child(ep, 0)),
                  number_from_json(entry[1], child(ep, 1)));
    }
  }
  return m;
}

Json povm_to_json(const Povm& p) {
  Json outcomes = Json::array();
  for (const Outcome& o : p.outcomes()) {
    outcomes.push_back({{"label", o.label}, {"matrix", matrix_to_json(o.effect)}});
  }
  return {{"dim", p.dim()}, {"outcomes", std::move(outcomes)}};
}

Json povm_to_json(const ProductLabeledPovm& p) {
  Json j = povm_to_json(p.povm());
  j["factor_arity"] = p.arities();
  return j;
}

Povm povm_from_json(const Json& j, const std::string& pointer) {
  const std::size_t dim = count_from_json(member(j, "dim", pointer), child(pointer, "dim"));
  const Json& list = member(j, "outcomes", pointer);
  const std::string lp = child(pointer, "outcomes");
  if (!list.is_array() || list.empty()) {
    throw SchemaError(lp, "expected a non-empty array of outcomes");
  }
  std::vector<Outcome> outcomes;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string op = child(lp, i);
    Label label = label_from_json(member(list[i], "label", op), child(op, "label"));
    const std::string mp = child(op, "matrix");
    ComplexMatrix effect = matrix_from_json(member(list[i], "matrix", op), mp);
    if (effect.rows() != static_cast<Eigen::Index>(dim) ||
        effect.cols() != static_cast<Eigen::Index>(dim)) {
      throw SchemaError(mp, "matrix is not " + std::to_string(dim) + "x" +
                                std::to_string(dim));
    }
    outcomes.push_back({std::move(label), std::move(effect)});
  }
  return rethrow_at(pointer, [&] { return Povm(std::move(outcomes)); });
}

ProductLabeledPovm product_povm_from_json(const Json& j, std::vector<std::size_t> arities,
                                          const std::string& pointer) {
  Povm p = povm_from_json(j, pointer);
  if (j.contains("factor_arity")) {
    arities = arities_from_json(j["factor_arity"], child(pointer, "factor_arity"));
  }
  if (arities.empty()) {
    throw SchemaError(pointer, "factor arities are neither given nor in \"factor_arity\"");
  }
  return rethrow_at(pointer, [&] { return ProductLabeledPovm(std::move(p), arities); });
}

std::string partition_key(const Label& label) {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(label[i]);
  }
  return out;
}

Label parse_partition_key(const std::string& key, const std::string& pointer) {
  Label label;
  std::istringstream in(key);
  std::string token;
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (token.empty() || used != token.size()) {
      throw SchemaError(pointer, "partition key \"" + key +
                                     "\" is not a comma-separated list of integers");
    }
    label.push_back(value);
  }
  if (label.empty() || key.back() == ',') {
    throw SchemaError(pointer, "partition key \"" + key + "\" is empty or malformed");
  }
  return label;
}

Json channel_to_json(const KrausChannel& c) {
  Json kraus = Json::array();
  for (const ComplexMatrix& k : c.kraus()) kraus.push_back(matrix_to_json(k));
  Json j = {{"dim_in", c.dim_in()}, {"dim_out", c.dim_out()}, {"kraus", std::move(kraus)}};
  if (c.has_partition()) {
    Json partition = Json::object();
    for (const Branch& b : c.partition()) partition[partition_key(b.label)] = b.kraus_indices;
    j["partition"] = std::move(partition);
  }
  return j;
}

KrausChannel channel_from_json(const Json& j, const std::string& pointer) {
  const std::size_t dim_in =
      count_from_json(member(j, "dim_in", pointer), child(pointer, "dim_in"));
  const std::size_t dim_out =
      count_from_json(member(j, "dim_out", pointer), child(pointer, "dim_out"));
  const Json& list = member(j, "kraus", pointer);
  const std::string kp = child(pointer, "kraus");
  if (!list.is_array() || list.empty()) {
    throw SchemaError(kp, "expected a non-empty array of matrices");
  }
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < list.size(); ++i) {
    ComplexMatrix k = matrix_from_json(list[i], child(kp, i));
    if (k.rows() != static_cast<Eigen::Index>(dim_out) ||
        k.cols() != static_cast<Eigen::Index>(dim_in)) {
      throw SchemaError(child(kp, i), "Kraus operator is not dim_out x dim_in");
    }
    kraus.push_back(std::move(k));
  }
  std::optional<std::vector<Branch>> partition;
  if (j.contains("partition")) {
    const Json& parts = j["partition"];
    const std::string pp = child(pointer, "partition");
    if (!parts.is_object()) throw SchemaError(pp, "expected an object");
    partition.emplace();
    for (const auto& [key, indices] : parts.items()) {
      const std::string ip = child(pp, key);
      Branch branch{parse_partition_key(key, ip), {}};
      if (!indices.is_array()) throw SchemaError(ip, "expected an array of Kraus indices");
      for (std::size_t i = 0; i < indices.size(); ++i) {
        branch.kraus_indices.push_back(count_from_json(indices[i], child(ip, i)));
      }
      partition->push_back(std::move(branch));
    }
  }
  return rethrow_at(pointer, [&] {
    return KrausChannel(dim_in, dim_out, std::move(kraus), std::move(partition));
  });
}

Json dilation_to_json(const NaimarkDilation& d) {
  return {{"dim_k", d.dim_k}, {"v", matrix_to_json(d.v)}, {"sharp", povm_to_json(d.sharp)}};
}

NaimarkDilation dilation_from_json(const Json& j, const std::string& pointer) {
  const std::size_t dim_k =
      count_from_json(member(j, "dim_k", pointer), child(pointer, "dim_k"));
  ComplexMatrix v = matrix_from_json(member(j, "v", pointer), child(pointer, "v"));
  Povm sharp = povm_from_json(member(j, "sharp", pointer), child(pointer, "sharp"));
  if (v.rows() != static_cast<Eigen::Index>(dim_k) || sharp.dim() != dim_k) {
    throw SchemaError(pointer, "v rows and sharp dimension must equal dim_k");
  }
  return {dim_k, std::move(sharp), std::move(v)};
}

Json outcome_to_json(const FeasibilityOutcome& o, bool with_witness) {
  Json j = {{"status", std::string(to_string(o.status))},
            {"residual", o.residual},
            {"iterations", o.iterations}};
  if (o.infeasibility_floor) j["floor"] = *o.infeasibility_floor;
  if (with_witness && o.witness) {
    Json w = Json::array();
    for (const ComplexMatrix& m : *o.witness) w.push_back(matrix_to_json(m));
    j["witness"] = std::move(w);
  }
  return j;
}

Json scheme_to_json(const SequentialScheme& s) {
  return {{"A", povm_to_json(s.first)},
          {"channel", channel_to_json(s.channel)},
          {"B_prime", povm_to_json(s.second)},
          {"implemented", povm_to_json(s.implemented)}};
}

bool is_channel_document(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  if (j.contains("kraus")) return true;
  if (j.contains("outcomes")) return false;
  throw SchemaError("", "neither a POVM (\"outcomes\") nor a channel (\"kraus\")");
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace qseq::io
