#include "ifsot/specfile.hpp"

#include <fstream>
#include <ios>
#include <sstream>

namespace ifsot {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

Rational number(const Token& t, std::size_t line) {
  try {
    return Rational::parse(t.text);
  } catch (const std::exception& e) {
    throw SpecParseError(line, t.column, e.what());
  }
}

}  // namespace

SystemSpec parse_system_spec(std::string_view text) {
  std::vector<ContractionMap> maps;
  std::vector<WeightVector> weights;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    last_line = line_no;
    const Token& head = tokens.front();

    if (head.text == "affine" || head.text == "qsine") {
      if (!weights.empty()) throw SpecParseError(line_no, head.column, "maps must precede weights");
      if (tokens.size() != 3) throw SpecParseError(line_no, head.column, "expected two numbers after " + std::string(head.text));
      const Rational a = number(tokens[1], line_no);
      const Rational b = number(tokens[2], line_no);
      try {
        maps.push_back(head.text == "affine" ? ContractionMap::affine(a, b) : ContractionMap::quarter_sine(a, b));
      } catch (const std::invalid_argument& e) {
        throw SpecParseError(line_no, head.column, e.what());
      }
    } else if (head.text == "weights") {
      if (weights.size() == 2) throw SpecParseError(line_no, head.column, "at most two weight lines");
      if (tokens.size() - 1 != maps.size()) {
        throw SpecParseError(line_no, head.column,
                             "expected " + std::to_string(maps.size()) + " weights, got " + std::to_string(tokens.size() - 1));
      }
      std::vector<Rational> w;
      for (std::size_t i = 1; i < tokens.size(); ++i) w.push_back(number(tokens[i], line_no));
      try {
        weights.emplace_back(std::move(w));
      } catch (const std::invalid_argument& e) {
        throw SpecParseError(line_no, head.column, e.what());
      }
    } else {
      throw SpecParseError(line_no, head.column, "unknown directive '" + std::string(head.text) + "'");
    }
  }

  if (maps.size() < 2) throw SpecParseError(last_line + 1, 1, "need at least two maps");
  if (weights.empty()) throw SpecParseError(last_line + 1, 1, "missing weights line");
  return SystemSpec{IFSystem(std::move(maps)), std::move(weights)};
}

SystemSpec load_system_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system_spec(buffer.str());
}

}  // namespace ifsot
