// SPDX-License-Identifier: Apache-2.0

#include "dbcd/instance_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dbcd/errors.hpp"

namespace dbcd {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* kind_name(ProblemKind kind) {
  return kind == ProblemKind::lasso ? "lasso" : "svm";
}

}  // namespace

LassoProblem ProblemInstance::lasso() const {
  if (kind != ProblemKind::lasso)
    throw ParameterError("ProblemInstance: not a lasso instance");
  return LassoProblem(SparseMatrix(rows, cols, entries), y, lambda);
}

SvmDualProblem ProblemInstance::svm() const {
  if (kind != ProblemKind::svm_dual)
    throw ParameterError("ProblemInstance: not an svm instance");
  return SvmDualProblem(SparseMatrix(rows, cols, entries), y, lambda);
}

std::int64_t ProblemInstance::message_entries() const {
  if (global_rows) return *global_rows;
  return kind == ProblemKind::lasso ? rows : cols;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);

  ProblemInstance inst;
  long line_no = 0;
  std::string line;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };

  if (!next_line()) throw ParseError("empty instance file", line_no);
  {
    std::istringstream header(line);
    std::string magic, version, kind;
    std::int64_t nnz = 0;
    if (!(header >> magic >> version >> inst.rows >> inst.cols >> nnz >> kind) ||
        magic != "DBCD-SPARSE" || version != "v1")
      throw ParseError("bad header, expected 'DBCD-SPARSE v1 m N nnz kind'", line_no);
    if (kind == "lasso")
      inst.kind = ProblemKind::lasso;
    else if (kind == "svm")
      inst.kind = ProblemKind::svm_dual;
    else
      throw ParseError("unknown problem kind '" + kind + "'", line_no);
    if (inst.rows <= 0 || inst.cols <= 0 || nnz < 0)
      throw ParseError("non-positive dimensions in header", line_no);
    inst.entries.reserve(static_cast<std::size_t>(nnz));
    for (std::int64_t k = 0; k < nnz; ++k) {
      if (!next_line()) throw ParseError("unexpected end of entries", line_no);
      Triplet t;
      std::istringstream row(line);
      if (!(row >> t.row >> t.col >> t.value))
        throw ParseError("malformed entry, expected 'row col value'", line_no);
      inst.entries.push_back(t);
    }
  }

  inst.y.reserve(static_cast<std::size_t>(inst.rows));
  for (int j = 0; j < inst.rows; ++j) {
    if (!next_line()) throw ParseError("unexpected end of y entries", line_no);
    std::istringstream row(line);
    double v = 0.0;
    if (!(row >> v)) throw ParseError("malformed y entry", line_no);
    inst.y.push_back(v);
  }

  bool saw_lambda = false;
  while (next_line()) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("malformed metadata line '" + line + "'", line_no);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "lambda") {
      std::istringstream v(value);
      if (!(v >> inst.lambda)) throw ParseError("malformed lambda value", line_no);
      saw_lambda = true;
    } else if (key == "labels") {
      if (inst.kind != ProblemKind::svm_dual)
        throw ParseError("labels metadata on a non-svm instance", line_no);
      std::istringstream v(value);
      std::vector<double> labels;
      double l = 0.0;
      while (v >> l) labels.push_back(l);
      if (static_cast<int>(labels.size()) != inst.rows)
        throw ParseError("label count does not match row count", line_no);
      inst.y = std::move(labels);
    } else if (key == "globalrows") {
      std::istringstream v(value);
      int g = 0;
      if (!(v >> g) || g < 0 || g > inst.rows)
        throw ParseError("malformed globalrows value", line_no);
      inst.global_rows = g;
    } else {
      throw ParseError("unknown metadata key '" + key + "'", line_no);
    }
  }
  if (!saw_lambda) throw ParseError("missing lambda metadata", line_no);
  return inst;
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write instance file: " + path);

  auto entries = inst.entries;
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  out << "DBCD-SPARSE v1 " << inst.rows << ' ' << inst.cols << ' '
      << entries.size() << ' ' << kind_name(inst.kind) << '\n';
  for (const auto& t : entries)
    out << t.row << ' ' << t.col << ' ' << format_double(t.value) << '\n';
  for (double v : inst.y) out << format_double(v) << '\n';
  out << "lambda=" << format_double(inst.lambda) << '\n';
  if (inst.kind == ProblemKind::svm_dual) {
    out << "labels=";
    for (std::size_t i = 0; i < inst.y.size(); ++i) {
      if (i) out << ' ';
      out << (inst.y[i] > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
  if (inst.global_rows) out << "globalrows=" << *inst.global_rows << '\n';
  if (!out) throw ParseError("write failed: " + path);
}

void save_sidecar(const std::vector<double>& x_star, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write sidecar file: " + path);
  for (std::size_t i = 0; i < x_star.size(); ++i)
    if (x_star[i] != 0.0) out << i << ' ' << format_double(x_star[i]) << '\n';
}

std::vector<double> load_sidecar(const std::string& path, int dimension) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sidecar file: " + path);
  std::vector<double> x(static_cast<std::size_t>(dimension), 0.0);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::int64_t index = 0;
    double value = 0.0;
    if (!(row >> index >> value) || index < 0 || index >= dimension)
      throw ParseError("malformed sidecar entry", line_no);
    x[static_cast<std::size_t>(index)] = value;
  }
  return x;
}

}  // namespace dbcd
