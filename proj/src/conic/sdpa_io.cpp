#include "rswipt/conic/sdpa_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "rswipt/error.hpp"

namespace rswipt::conic {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_entries(std::ostream& os, int matno, int block, const Matrix& m, double sign) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) {
      const double v = sign * m(i, j);
      if (v == 0.0) continue;
      os << matno << ' ' << block << ' ' << (i + 1) << ' ' << (j + 1) << ' ' << fmt_double(v) << '\n';
    }
  }
}

// Tokenizer that drops comment lines and SDPA's optional punctuation.
std::vector<std::string> tokens(std::istream& is) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '"' || line[first] == '*') continue;
    for (char& ch : line) {
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back(tok);
  }
  return out;
}

}  // namespace

void write_sdpa(std::ostream& os, const ConicProblem& problem) {
  problem.validate();
  os << "\"rswipt conic problem\n";
  os << problem.num_vars << '\n' << problem.blocks.size() << '\n';
  for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
    os << (b ? " " : "") << problem.blocks[b].dim;
  }
  os << '\n';
  for (int k = 0; k < problem.num_vars; ++k) os << (k ? " " : "") << fmt_double(problem.objective(k));
  os << '\n';
  for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
    const auto& blk = problem.blocks[b];
    write_entries(os, 0, static_cast<int>(b) + 1, blk.constant, -1.0);
    for (const auto& [v, f] : blk.coeffs) write_entries(os, v + 1, static_cast<int>(b) + 1, f, 1.0);
  }
}

std::string to_sdpa(const ConicProblem& problem) {
  std::ostringstream os;
  write_sdpa(os, problem);
  return os.str();
}

ConicProblem read_sdpa(std::istream& is) {
  const auto tok = tokens(is);
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tok.size()) throw ValidationError("read_sdpa: unexpected end of input");
    return tok[pos++];
  };
  auto as_int = [](const std::string& s) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') throw ValidationError("read_sdpa: expected integer, got '" + s + "'");
    return static_cast<int>(v);
  };
  auto as_double = [](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ValidationError("read_sdpa: expected number, got '" + s + "'");
    return v;
  };

  ConicProblem p;
  const int m = as_int(next());
  const int nb = as_int(next());
  if (m < 1 || nb < 0) throw ValidationError("read_sdpa: bad header");
  for (int k = 0; k < m; ++k) p.add_variable("x" + std::to_string(k));
  std::vector<bool> diagonal(nb);
  for (int b = 0; b < nb; ++b) {
    const int n = as_int(next());
    if (n == 0) throw ValidationError("read_sdpa: zero block size");
    diagonal[b] = n < 0;
    p.blocks.emplace_back(std::abs(n));
  }
  for (int k = 0; k < m; ++k) p.objective(k) = as_double(next());

  std::vector<std::vector<Matrix>> coeffs(nb);
  while (pos < tok.size()) {
    const int k = as_int(next());
    const int b = as_int(next()) - 1;
    const int i = as_int(next()) - 1;
    const int j = as_int(next()) - 1;
    const double v = as_double(next());
    if (k < 0 || k > m || b < 0 || b >= nb) throw ValidationError("read_sdpa: entry index out of range");
    const int n = p.blocks[b].dim;
    if (i < 0 || j < 0 || i >= n || j >= n) throw ValidationError("read_sdpa: entry position out of range");
    if (diagonal[b] && i != j) throw ValidationError("read_sdpa: off-diagonal entry in diagonal block");
    if (k == 0) {
      p.blocks[b].constant(i, j) = -v;
      p.blocks[b].constant(j, i) = -v;
    } else {
      Matrix f = Matrix::Zero(n, n);
      f(i, j) = v;
      f(j, i) = v;
      p.blocks[b].add_term(k - 1, f);
    }
  }
  p.validate();
  return p;
}

ConicProblem from_sdpa(const std::string& text) {
  std::istringstream is(text);
  return read_sdpa(is);
}

}  // namespace rswipt::conic
