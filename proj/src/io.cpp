// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include "nspec/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nspec/errors.hpp"

namespace nspec {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

const Json& field(const Json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) fail(std::string("missing field \"") + name + "\"");
  return *it;
}

long integer_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_number_integer()) {
    fail(std::string("field \"") + name + "\" must be an integer");
  }
  return v.get<long>();
}

std::vector<double> number_array(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) fail(where + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ParsedChain parse_document(const Json& doc) {
  if (!doc.is_object()) fail("chain spec must be a JSON object");
  const Json& type = field(doc, "type");
  if (!type.is_string()) fail("field \"type\" must be a string");
  ParsedChain chain;
  chain.type = type.get<std::string>();

  if (chain.type == "general") {
    const Json& rows = field(doc, "rows");
    if (!rows.is_array() || rows.empty()) {
      fail("field \"rows\" must be a non-empty array of rows");
    }
    std::vector<std::vector<double>> m;
    for (size_t r = 0; r < rows.size(); ++r) {
      char where[32];
      std::snprintf(where, sizeof(where), "rows[%zu]", r);
      m.push_back(number_array(rows[r], where));
      if (m.back().size() != rows.size()) {
        fail(std::string(where) + ": matrix must be square");
      }
    }
    chain.kernel = from_rows(m);
    return chain;
  }

  if (chain.type == "birth_death") {
    const auto p = number_array(field(doc, "p"), "field \"p\"");
    const auto q = number_array(field(doc, "q"), "field \"q\"");
    if (p.size() != q.size()) {
      fail("fields \"p\" and \"q\" must have the same length");
    }
    if (p.empty()) fail("fields \"p\" and \"q\" must be non-empty");
    chain.kernel = birth_death(p, q, static_cast<long>(p.size()));
    return chain;
  }

  if (chain.type == "moran3") {
    chain.moran = moran_matrix(integer_field(doc, "N"));
    return chain;
  }

  if (chain.type == "a2dmc") {
    const long N = integer_field(doc, "N");
    if (N < 1) fail("field \"N\" must be at least 1");
    const TriIndex index(N);
    Mat pi(index.size(), index.size());
    const Json& entries = field(doc, "entries");
    if (!entries.is_array()) fail("field \"entries\" must be an array");
    for (size_t e = 0; e < entries.size(); ++e) {
      char where[32];
      std::snprintf(where, sizeof(where), "entries[%zu]", e);
      const Json& entry = entries[e];
      if (!entry.is_object()) fail(std::string(where) + " must be an object");
      const auto from = number_array(field(entry, "from"), where);
      const auto to = number_array(field(entry, "to"), where);
      if (from.size() != 2 || to.size() != 2) {
        fail(std::string(where) + ": \"from\" and \"to\" must be pairs");
      }
      const long i = static_cast<long>(from[0]), j = static_cast<long>(from[1]);
      const long k = static_cast<long>(to[0]), l = static_cast<long>(to[1]);
      if (!index.contains(i, j) || !index.contains(k, l)) {
        fail(std::string(where) + ": state outside the triangle");
      }
      const Json& prob = field(entry, "prob");
      if (!prob.is_number()) {
        fail(std::string(where) + ": \"prob\" must be a number");
      }
      pi.at(index.index(i, j), index.index(k, l)) += prob.get<double>();
    }
    chain.a2d = extract_blocks(index, pi);
    return chain;
  }

  fail("unknown chain type \"" + chain.type +
       "\"; expected general, birth_death, moran3 or a2dmc");
}

}  // namespace

ParsedChain parse_chain_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(std::string("input is not valid JSON: ") + e.what());
  }
  return parse_document(doc);
}

ParsedChain read_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_chain_json(buf.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(std::ostream& out, const TriIndex& index, const Mat& m) {
  if (m.rows != index.size() || m.cols != index.size()) {
    fail("matrix dimensions do not match the triangle");
  }
  out << "i,j,k,l,value\n";
  for (long s = 0; s < index.size(); ++s) {
    const auto [i, j] = index.state(s);
    for (long t = 0; t < index.size(); ++t) {
      const double v = m.at(s, t);
      if (v == 0.0) continue;
      const auto [k, l] = index.state(t);
      out << i << ',' << j << ',' << k << ',' << l << ','
          << format_double(v) << '\n';
    }
  }
}

Mat read_matrix_csv(std::istream& in, const TriIndex& index) {
  std::string line;
  if (!std::getline(in, line) || line != "i,j,k,l,value") {
    fail("matrix CSV must start with the header \"i,j,k,l,value\"");
  }
  Mat m(index.size(), index.size());
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    long f[4];
    int consumed = 0;
    if (std::sscanf(line.c_str(), "%ld,%ld,%ld,%ld,%n", &f[0], &f[1], &f[2],
                    &f[3], &consumed) != 4) {
      char msg[64];
      std::snprintf(msg, sizeof(msg), "line %ld: malformed CSV row", lineno);
      fail(msg);
    }
    if (!index.contains(f[0], f[1]) || !index.contains(f[2], f[3])) {
      char msg[64];
      std::snprintf(msg, sizeof(msg), "line %ld: state outside the triangle",
                    lineno);
      fail(msg);
    }
    char* end = nullptr;
    const double v = std::strtod(line.c_str() + consumed, &end);
    if (end == line.c_str() + consumed) {
      char msg[64];
      std::snprintf(msg, sizeof(msg), "line %ld: malformed value", lineno);
      fail(msg);
    }
    m.at(index.index(f[0], f[1]), index.index(f[2], f[3])) = v;
  }
  return m;
}

void write_distribution_csv(std::ostream& out, const TriIndex& index,
                            const std::vector<double>& v) {
  if (static_cast<long>(v.size()) != index.size()) {
    fail("vector length does not match the triangle");
  }
  out << "i,j,value\n";
  for (long s = 0; s < index.size(); ++s) {
    if (v[s] == 0.0) continue;
    const auto [i, j] = index.state(s);
    out << i << ',' << j << ',' << format_double(v[s]) << '\n';
  }
}

void write_block_csv(std::ostream& out, const BlockMatrix& block) {
  out << "n,m,value\n";
  for (long n = block.d; n <= block.N; ++n) {
    for (long m = block.d; m <= block.N; ++m) {
      const double v = block.at(n, m);
      if (v == 0.0) continue;
      out << n << ',' << m << ',' << format_double(v) << '\n';
    }
  }
}

}  // namespace nspec
