#include "htaac/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "htaac/error.hpp"

namespace htaac {

Clause normalize_clause(const std::vector<int>& dimacs_literals) {
  Clause clause;
  for (int lit : dimacs_literals) {
    const Literal l{lit < 0 ? -lit : lit, lit < 0};
    if (std::find(clause.literals.begin(), clause.literals.end(), l) != clause.literals.end())
      continue;
    for (const Literal& other : clause.literals)
      if (other.var == l.var) clause.tautological = true;
    // Both polarities of a tautology are kept so it round-trips through DIMACS.
    clause.literals.push_back(l);
  }
  return clause;
}

Assignment::Assignment(Eigen::VectorXi spins) : y_(std::move(spins)) {
  for (Eigen::Index i = 0; i < y_.size(); ++i)
    if (y_[i] != 1 && y_[i] != -1)
      throw ArgumentError("assignment entries must be +1 or -1");
}

Assignment Assignment::all_true(int num_y) {
  return Assignment(Eigen::VectorXi::Ones(num_y));
}

Assignment Assignment::from_mask(int num_vars, std::uint64_t mask) {
  Eigen::VectorXi y(num_vars + 1);
  y[0] = 1;
  for (int i = 1; i <= num_vars; ++i) y[i] = (mask >> (i - 1)) & 1u ? 1 : -1;
  return Assignment(std::move(y));
}

CnfInstance::CnfInstance(int num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ < 1) throw ArgumentError("instance needs at least one variable");
  for (const Clause& c : clauses_) {
    if (c.literals.empty()) throw ArgumentError("empty clause");
    for (const Literal& l : c.literals)
      if (l.var < 1 || l.var > num_vars_)
        throw ArgumentError("literal index " + std::to_string(l.var) +
                            " outside 1.." + std::to_string(num_vars_));
  }
}

int CnfInstance::k() const {
  if (clauses_.empty()) return 0;
  const std::size_t len = clauses_.front().size();
  for (const Clause& c : clauses_)
    if (c.size() != len) return 0;
  return static_cast<int>(len);
}

int CnfInstance::max_clause_length() const {
  std::size_t len = 0;
  for (const Clause& c : clauses_)
    if (!c.tautological) len = std::max(len, c.size());
  return static_cast<int>(len);
}

namespace {

bool parse_int(std::string_view token, long long& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

CnfInstance parse_dimacs(std::string_view text) {
  long long declared_vars = -1;
  std::vector<Clause> clauses;
  std::vector<int> pending;
  bool open_clause = false;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0][0] == 'c') continue;
    if (tokens[0] == "%") break;  // SATLIB trailer
    if (tokens[0] == "p") {
      long long vars = 0, count = 0;
      if (declared_vars >= 0)
        throw ParseError("line " + std::to_string(line_no) + ": duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf" || !parse_int(tokens[2], vars) ||
          !parse_int(tokens[3], count) || vars < 1 || count < 0)
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed header, expected 'p cnf <vars> <clauses>'");
      declared_vars = vars;
      continue;
    }
    if (declared_vars < 0)
      throw ParseError("line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    for (std::string_view tok : tokens) {
      long long lit = 0;
      if (!parse_int(tok, lit))
        throw ParseError("line " + std::to_string(line_no) + ": bad literal '" +
                         std::string(tok) + "'");
      if (lit == 0) {
        if (pending.empty())
          throw ParseError("line " + std::to_string(line_no) + ": empty clause");
        clauses.push_back(normalize_clause(pending));
        pending.clear();
        open_clause = false;
        continue;
      }
      if (lit > declared_vars || -lit > declared_vars)
        throw ParseError("line " + std::to_string(line_no) + ": literal " +
                         std::to_string(lit) + " exceeds declared variable count " +
                         std::to_string(declared_vars));
      pending.push_back(static_cast<int>(lit));
      open_clause = true;
    }
  }
  if (declared_vars < 0) throw ParseError("missing 'p cnf' header");
  if (open_clause) throw ParseError("unterminated clause at end of input");
  if (clauses.empty()) throw ParseError("instance has no clauses");
  return CnfInstance(static_cast<int>(declared_vars), std::move(clauses));
}

CnfInstance read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str());
}

std::string to_dimacs(const CnfInstance& instance) {
  std::ostringstream out;
  out << "p cnf " << instance.num_vars() << ' ' << instance.num_clauses() << '\n';
  for (const Clause& c : instance.clauses()) {
    for (const Literal& l : c.literals) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfInstance generate_random(int num_vars, int num_clauses, int k, std::uint64_t seed) {
  if (k < 1) throw ArgumentError("clause length must be at least 1");
  if (num_vars < k) throw ArgumentError("need at least k variables");
  if (num_clauses < 0) throw ArgumentError("negative clause count");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_var(1, num_vars);
  std::bernoulli_distribution negate(0.5);

  std::vector<Clause> clauses;
  clauses.reserve(num_clauses);
  std::vector<int> vars(k);
  while (static_cast<int>(clauses.size()) < num_clauses) {
    for (int& v : vars) v = pick_var(rng);
    std::vector<int> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    Clause c;
    for (int v : vars) c.literals.push_back({v, negate(rng)});
    clauses.push_back(std::move(c));
  }
  return CnfInstance(num_vars, std::move(clauses));
}

bool clause_satisfied(const Clause& clause, const Assignment& y) {
  if (clause.tautological) return true;
  for (const Literal& l : clause.literals)
    if (y.truth(l.var) != l.negated) return true;
  return false;
}

int count_satisfied(const CnfInstance& instance, const Assignment& y) {
  if (y.size() != instance.num_y())
    throw ArgumentError("assignment length " + std::to_string(y.size()) +
                        " does not match N = " + std::to_string(instance.num_y()));
  int count = 0;
  for (const Clause& c : instance.clauses()) count += clause_satisfied(c, y) ? 1 : 0;
  return count;
}

}  // namespace htaac
