// Copyright 2026 The orthsvd Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "orthsvd/harness/instance_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "orthsvd/harness/format.hpp"

namespace orthsvd {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& what) {
  throw Error(ErrorCode::kParseError, "instance: " + what);
}

Vector<double> ReadNumbers(const json& doc, const char* key, Index expected) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    Fail(std::string("'") + key + "' must be an array of numbers");
  }
  if (static_cast<Index>(it->size()) != expected) {
    Fail(std::string("'") + key + "' has " + std::to_string(it->size()) +
         " entries, expected " + std::to_string(expected));
  }
  Vector<double> out(expected);
  for (Index i = 0; i < expected; ++i) {
    const json& e = (*it)[static_cast<std::size_t>(i)];
    if (!e.is_number()) Fail(std::string("'") + key + "' holds a non-number");
    out(i) = e.get<double>();
  }
  return out;
}

Matrix<double> ParsePermutation(const std::string& spec, Index n) {
  std::vector<long long> idx;
  try {
    idx = ParseIntList(spec);
  } catch (const Error&) {
    Fail("bad permutation list '" + spec + "'");
  }
  if (static_cast<Index>(idx.size()) != n) {
    Fail("permutation has " + std::to_string(idx.size()) +
         " indices, expected " + std::to_string(n));
  }
  Matrix<double> q = Matrix<double>::Zero(n, n);
  std::vector<bool> seen(n, false);
  for (Index r = 0; r < n; ++r) {
    const long long c = idx[r];
    if (c < 0 || c >= n || seen[c]) Fail("permutation indices must be 0..n-1, each once");
    seen[c] = true;
    q(r, c) = 1.0;
  }
  return q;
}

std::optional<std::vector<Index>> AsPermutation(const Matrix<double>& q) {
  const Index n = q.rows();
  std::vector<Index> perm(n, -1);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const double v = q(r, c);
      if (v == 1.0 && perm[r] < 0) {
        perm[r] = c;
      } else if (v != 0.0) {
        return std::nullopt;
      }
    }
    if (perm[r] < 0) return std::nullopt;
  }
  return perm;
}

}  // namespace

RankOneUpdatedOrthogonal<double> ParseInstance(const std::string& text,
                                               double orthogonality_tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail("top level must be an object");
  const auto n_it = doc.find("n");
  if (n_it == doc.end() || !n_it->is_number_integer() ||
      n_it->get<long long>() < 1) {
    Fail("'n' must be a positive integer");
  }
  const Index n = n_it->get<Index>();
  Vector<double> a = ReadNumbers(doc, "a", n);
  Vector<double> b = ReadNumbers(doc, "b", n);

  const auto q_it = doc.find("q");
  if (q_it == doc.end()) Fail("missing 'q'");
  if (q_it->is_string()) {
    const std::string q = q_it->get<std::string>();
    if (q == "identity") {
      return RankOneUpdatedOrthogonal<double>(std::move(a), std::move(b));
    }
    const std::string prefix = "permutation:";
    if (q.rfind(prefix, 0) != 0) Fail("unknown q '" + q + "'");
    return RankOneUpdatedOrthogonal<double>(
        ValidateOrthogonal(ParsePermutation(q.substr(prefix.size()), n),
                           orthogonality_tol),
        std::move(a), std::move(b));
  }
  const Vector<double> flat = ReadNumbers(doc, "q", n * n);
  Matrix<double> q(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) q(r, c) = flat(r * n + c);
  }
  return RankOneUpdatedOrthogonal<double>(
      ValidateOrthogonal(q, orthogonality_tol), std::move(a), std::move(b));
}

RankOneUpdatedOrthogonal<double> LoadInstance(const std::string& path,
                                              double orthogonality_tol) {
  std::ifstream in(path);
  if (!in) Fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseInstance(ss.str(), orthogonality_tol);
}

std::string SerializeInstance(const RankOneUpdatedOrthogonal<double>& m) {
  const Index n = m.dim();
  auto numbers = [](const Vector<double>& v) {
    std::string out = "[";
    for (Index i = 0; i < v.size(); ++i) {
      if (i > 0) out += ", ";
      out += FormatShortest(v(i));
    }
    return out + "]";
  };
  std::string q;
  if (m.is_identity()) {
    q = "\"identity\"";
  } else if (const auto perm = AsPermutation(m.q()->matrix())) {
    q = "\"permutation:";
    for (Index i = 0; i < n; ++i) {
      if (i > 0) q += ",";
      q += std::to_string((*perm)[i]);
    }
    q += "\"";
  } else {
    Vector<double> flat(n * n);
    for (Index r = 0; r < n; ++r) {
      for (Index c = 0; c < n; ++c) flat(r * n + c) = m.q()->matrix()(r, c);
    }
    q = numbers(flat);
  }
  return "{\"n\": " + std::to_string(n) + ", \"q\": " + q +
         ", \"a\": " + numbers(m.a()) + ", \"b\": " + numbers(m.b()) + "}\n";
}

}  // namespace orthsvd
