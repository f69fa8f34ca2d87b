#include "expedis/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace expedis {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& what) {
  throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

Bqp01Instance parse_native(const std::string& text, const std::string& path) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Bqp01Instance p;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (!have_header) {
      if (!(ls >> p.n >> p.m)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        fail(path, lineno, "expected header 'n m'");
      }
      if (p.n < 1 || p.m < 0) fail(path, lineno, "bad dimensions");
      p.F_hat = Matrix::Zero(p.n, p.n);
      p.c_hat = Vector::Zero(p.n);
      p.A_hat = Matrix::Zero(p.m, p.n);
      p.b_hat = Vector::Zero(p.m);
      have_header = true;
      continue;
    }
    char tag;
    if (!(ls >> tag)) continue;  // blank line
    int i = 0, j = 0;
    double v = 0.0;
    bool ok = false;
    switch (tag) {
      case 'F':
        ok = static_cast<bool>(ls >> i >> j >> v);
        if (ok && (i < 1 || i > p.n || j < 1 || j > p.n))
          fail(path, lineno, "F index out of range");
        if (ok) p.F_hat(i - 1, j - 1) = p.F_hat(j - 1, i - 1) = v;
        break;
      case 'c':
        ok = static_cast<bool>(ls >> i >> v);
        if (ok && (i < 1 || i > p.n)) fail(path, lineno, "c index out of range");
        if (ok) p.c_hat(i - 1) = v;
        break;
      case 'A':
        ok = static_cast<bool>(ls >> i >> j >> v);
        if (ok && (i < 1 || i > p.m || j < 1 || j > p.n))
          fail(path, lineno, "A index out of range");
        if (ok) p.A_hat(i - 1, j - 1) = v;
        break;
      case 'b':
        ok = static_cast<bool>(ls >> i >> v);
        if (ok && (i < 1 || i > p.m)) fail(path, lineno, "b index out of range");
        if (ok) p.b_hat(i - 1) = v;
        break;
      default:
        fail(path, lineno, std::string("unknown record tag '") + tag + "'");
    }
    if (!ok) fail(path, lineno, "malformed record");
  }
  if (!have_header) fail(path, lineno, "empty file");
  try {
    p.validate_and_repair();
  } catch (const ModelError& e) {
    throw IoError(path + ": " + e.what());
  }
  return p;
}

std::string format_native(const Bqp01Instance& p) {
  std::ostringstream out;
  out << p.n << ' ' << p.m << '\n';
  for (int i = 0; i < p.n; ++i)
    for (int j = i; j < p.n; ++j)
      if (p.F_hat(i, j) != 0.0)
        out << "F " << i + 1 << ' ' << j + 1 << ' ' << num(p.F_hat(i, j))
            << '\n';
  for (int i = 0; i < p.n; ++i)
    if (p.c_hat(i) != 0.0) out << "c " << i + 1 << ' ' << num(p.c_hat(i)) << '\n';
  for (int r = 0; r < p.m; ++r)
    for (int j = 0; j < p.n; ++j)
      if (p.A_hat(r, j) != 0.0)
        out << "A " << r + 1 << ' ' << j + 1 << ' ' << num(p.A_hat(r, j))
            << '\n';
  for (int r = 0; r < p.m; ++r)
    if (p.b_hat(r) != 0.0) out << "b " << r + 1 << ' ' << num(p.b_hat(r)) << '\n';
  return out.str();
}

Bqp01Instance parse_json(const std::string& text, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  Bqp01Instance p;
  try {
    p.n = j.at("n").get<int>();
    p.m = j.at("m").get<int>();
    auto mat = [&](const char* key, int rows, int cols) {
      Matrix out = Matrix::Zero(rows, cols);
      const auto& a = j.at(key);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out(r, c) = a.at(r).at(c).get<double>();
      return out;
    };
    p.F_hat = mat("F", p.n, p.n);
    p.A_hat = p.m > 0 ? mat("A", p.m, p.n) : Matrix::Zero(0, p.n);
    p.c_hat = Vector::Zero(p.n);
    for (int i = 0; i < p.n; ++i) p.c_hat(i) = j.at("c").at(i).get<double>();
    p.b_hat = Vector::Zero(p.m);
    for (int r = 0; r < p.m; ++r) p.b_hat(r) = j.at("b").at(r).get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  try {
    p.validate_and_repair();
  } catch (const ModelError& e) {
    throw IoError(path + ": " + e.what());
  }
  return p;
}

std::string format_json(const Bqp01Instance& p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["m"] = p.m;
  auto mat = [](const Matrix& m) {
    nlohmann::json a = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      a.push_back(row);
    }
    return a;
  };
  j["F"] = mat(p.F_hat);
  j["A"] = mat(p.A_hat);
  j["c"] = std::vector<double>(p.c_hat.begin(), p.c_hat.end());
  j["b"] = std::vector<double>(p.b_hat.begin(), p.b_hat.end());
  return j.dump(2) + "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Bqp01Instance parse_instance(const std::string& text, FileFormat format) {
  return format == FileFormat::Native ? parse_native(text, "<string>")
                                      : parse_json(text, "<string>");
}

std::string format_instance(const Bqp01Instance& p, FileFormat format) {
  return format == FileFormat::Native ? format_native(p) : format_json(p);
}

Bqp01Instance read_instance(const std::string& path, FileFormat format) {
  const std::string text = slurp(path);
  return format == FileFormat::Native ? parse_native(text, path)
                                      : parse_json(text, path);
}

void write_instance(const Bqp01Instance& p, const std::string& path,
                    FileFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << format_instance(p, format);
}

MaxCutExport export_maxcut(const MaxCutInstance& g, const std::string& path,
                           bool scale_to_integer) {
  MaxCutExport info;
  if (scale_to_integer) {
    for (double s = 1.0; s <= 4096.0; s *= 2.0) {
      bool ok = true;
      for (int i = 0; i < g.n_vertices && ok; ++i)
        for (int j = i + 1; j < g.n_vertices && ok; ++j) {
          const double w = g.weights(i, j) * s;
          if (std::abs(w - std::round(w)) > 1e-9) ok = false;
        }
      if (ok) {
        info.scaled = true;
        info.scale = s;
        break;
      }
    }
    info.scale_failed = !info.scaled;
  }

  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "# constant " << num(g.constant) << '\n';
  out << "# scale " << num(info.scale) << '\n';
  if (info.scale_failed) out << "# warning: no integer scale <= 4096\n";

  int edges = 0;
  for (int i = 0; i < g.n_vertices; ++i)
    for (int j = i + 1; j < g.n_vertices; ++j)
      if (g.weights(i, j) != 0.0) ++edges;
  out << g.n_vertices << ' ' << edges << '\n';
  for (int i = 0; i < g.n_vertices; ++i)
    for (int j = i + 1; j < g.n_vertices; ++j)
      if (g.weights(i, j) != 0.0) {
        const double w = g.weights(i, j) * info.scale;
        out << i + 1 << ' ' << j + 1 << ' '
            << (info.scaled ? num(std::round(w)) : num(w)) << '\n';
      }
  return info;
}

MaxCutInstance import_maxcut(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  int lineno = 0;
  double constant = 0.0, scale = 1.0;
  int nv = -1, edges = 0;
  MaxCutInstance g;
  int seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key;
      ls >> key;
      if (key == "constant") ls >> constant;
      if (key == "scale") ls >> scale;
      continue;
    }
    std::istringstream ls(line);
    if (nv < 0) {
      if (!(ls >> nv >> edges)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        fail(path, lineno, "expected header 'V E'");
      }
      g.n_vertices = nv;
      g.weights = Matrix::Zero(nv, nv);
      continue;
    }
    int i, j;
    double w;
    if (!(ls >> i >> j >> w)) continue;
    if (i < 1 || i > nv || j < 1 || j > nv || i == j)
      fail(path, lineno, "edge index out of range");
    g.weights(i - 1, j - 1) = g.weights(j - 1, i - 1) = w / scale;
    ++seen;
  }
  if (nv < 0) fail(path, lineno, "empty file");
  if (seen != edges) fail(path, lineno, "edge count mismatch");
  g.constant = constant;
  g.C = 0.25 * (Matrix(g.weights.rowwise().sum().asDiagonal()) - g.weights);
  return g;
}

}  // namespace expedis
