#include "causalineq/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace causalineq {

namespace {

[[noreturn]] void fail_at(const std::string& origin, int line,
                          const std::string& what) {
  throw InputError(origin + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_size(const std::string& tok, const std::string& origin, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail_at(origin, line, "expected a domain size, got '" + tok + "'");
  }
}

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

CausalGraph parse_graph(std::istream& in, const std::string& origin) {
  CausalGraph g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0];
    try {
      if (directive == "observed") {
        if (tokens.size() != 3) {
          fail_at(origin, lineno, "usage: observed NAME SIZE");
        }
        g.add_observed(tokens[1], parse_size(tokens[2], origin, lineno));
      } else if (directive == "hidden") {
        if (tokens.size() != 2 && tokens.size() != 3) {
          fail_at(origin, lineno, "usage: hidden NAME [SIZE]");
        }
        int size = tokens.size() == 3 ? parse_size(tokens[2], origin, lineno) : 0;
        g.add_hidden(tokens[1], size);
      } else if (directive == "edge") {
        if (tokens.size() != 3) {
          fail_at(origin, lineno, "usage: edge PARENT CHILD");
        }
        g.add_edge(tokens[1], tokens[2]);
      } else if (directive == "bidir") {
        if (tokens.size() != 3) {
          fail_at(origin, lineno, "usage: bidir A B");
        }
        g.add_bidirected(tokens[1], tokens[2]);
      } else {
        fail_at(origin, lineno, "unknown directive '" + directive + "'");
      }
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      fail_at(origin, lineno, e.what());
    }
  }

  ValidationReport report = validate(g);
  if (!report.ok()) {
    std::string joined;
    for (const auto& p : report.problems) {
      if (!joined.empty()) joined += "; ";
      joined += p;
    }
    throw InputError(origin + ": " + joined);
  }
  return g;
}

CausalGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  return parse_graph(in, path);
}

DistributionTable parse_distribution(const CausalGraph& g, std::istream& in,
                                     const std::string& origin) {
  bool saw_intervened = false;
  VarSet intervened = 0;
  std::vector<int> listed;  // observed indices in the file's order
  std::vector<double> values;
  bool in_values = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::size_t start = 0;
    if (!in_values) {
      const std::string& directive = tokens[0];
      if (directive == "intervened") {
        if (saw_intervened) fail_at(origin, lineno, "duplicate 'intervened'");
        saw_intervened = true;
        if (tokens.size() == 2 && tokens[1] == "-") {
          intervened = 0;
        } else {
          if (tokens.size() < 2) {
            fail_at(origin, lineno, "usage: intervened NAME... | -");
          }
          for (std::size_t i = 1; i < tokens.size(); ++i) {
            try {
              intervened |= var_bit(g.require_observed(tokens[i]));
            } catch (const InputError& e) {
              fail_at(origin, lineno, e.what());
            }
          }
        }
        continue;
      }
      if (directive == "vars") {
        if (!listed.empty()) fail_at(origin, lineno, "duplicate 'vars'");
        VarSet seen = 0;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          int idx;
          try {
            idx = g.require_observed(tokens[i]);
          } catch (const InputError& e) {
            fail_at(origin, lineno, e.what());
          }
          if (contains(seen, idx)) {
            fail_at(origin, lineno, "variable '" + tokens[i] + "' listed twice");
          }
          seen |= var_bit(idx);
          listed.push_back(idx);
        }
        if (seen != g.all_observed()) {
          fail_at(origin, lineno,
                  "'vars' must list every observed variable exactly once");
        }
        continue;
      }
      if (directive == "values") {
        if (!saw_intervened) {
          fail_at(origin, lineno, "'values' before 'intervened'");
        }
        if (listed.empty()) fail_at(origin, lineno, "'values' before 'vars'");
        in_values = true;
        start = 1;
      } else {
        fail_at(origin, lineno, "unknown directive '" + directive + "'");
      }
    }
    for (std::size_t i = start; i < tokens.size(); ++i) {
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(tokens[i], &pos));
        if (pos != tokens[i].size()) throw std::invalid_argument(tokens[i]);
      } catch (const std::exception&) {
        fail_at(origin, lineno, "expected a number, got '" + tokens[i] + "'");
      }
    }
  }
  if (!in_values) {
    throw InputError(origin + ": missing 'values' section");
  }

  std::vector<int> sizes = g.domain_sizes();
  std::size_t expected = 1;
  for (int s : sizes) expected *= static_cast<std::size_t>(s);
  if (values.size() != expected) {
    throw InputError(origin + ": expected " + std::to_string(expected) +
                     " values, got " + std::to_string(values.size()));
  }

  DistributionTable t = DistributionTable::zeros(g, intervened);
  std::vector<int> asg(g.observed_count(), 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t j = listed.size(); j-- > 0;) {
      int v = listed[j];
      asg[v] = static_cast<int>(rem % static_cast<std::size_t>(sizes[v]));
      rem /= static_cast<std::size_t>(sizes[v]);
    }
    t.at(asg) = values[flat];
  }
  return t;
}

DistributionTable read_distribution_file(const CausalGraph& g,
                                         const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open distribution file '" + path + "'");
  return parse_distribution(g, in, path);
}

void write_distribution(std::ostream& out, const CausalGraph& g,
                        const DistributionTable& t) {
  out << "intervened";
  if (t.intervened == 0) {
    out << " -";
  } else {
    for (int i : set_members(t.intervened)) out << ' ' << g.observed(i).name;
  }
  out << "\nvars";
  for (int i = 0; i < g.observed_count(); ++i) {
    out << ' ' << g.observed(i).name;
  }
  out << "\nvalues\n";

  int last = g.observed_count() - 1;
  std::size_t per_line =
      last >= 0 ? static_cast<std::size_t>(t.sizes[last]) : t.values.size();
  char buf[64];
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", t.values[i]);
    out << buf;
    out << ((i + 1) % per_line == 0 ? '\n' : ' ');
  }
}

VarSet parse_var_set(const CausalGraph& g, const std::string& spec) {
  std::string low = lowercase(spec);
  if (low == "-" || low == "obs") return 0;
  VarSet out = 0;
  std::string tok;
  std::istringstream in(spec);
  while (std::getline(in, tok, ',')) {
    std::size_t b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) {
      throw InputError("empty name in variable list '" + spec + "'");
    }
    std::size_t e = tok.find_last_not_of(" \t");
    out |= var_bit(g.require_observed(tok.substr(b, e - b + 1)));
  }
  if (out == 0) throw InputError("empty variable list '" + spec + "'");
  return out;
}

std::string var_set_spec(const CausalGraph& g, VarSet s) {
  if (s == 0) return "-";
  std::string out;
  for (int i : set_members(s)) {
    if (!out.empty()) out += ',';
    out += g.observed(i).name;
  }
  return out;
}

}  // namespace causalineq
