#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "taut/expression.hpp"

namespace taut {

/// Parse failure with the byte offset where it was detected.
class BracketParseError : public std::runtime_error {
 public:
  BracketParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the ASCII bracket notation:
///
///   expr   := term (('+'|'-') term)*   |  '0'
///   term   := [rational ['*']] factor+
///   factor := '<' item+ '>_' genus  |  '(' expr ')'
///   item   := name | 'P(' name ')' | 'P^' k '(' name ')'
///
/// Each bracket is a vertex. U<k>/V<k> are regular/frozen legs, names starting
/// with W are extra legs, x and x* are the two halves of an edge, and any other
/// unpaired name is a named leg. A parenthesised group multiplies out over the
/// surrounding factors. Bracket coefficients are Aut-normalized, so the stored
/// coefficient is the written one divided by |Aut|.
///
/// `ambient` is required when the text is "0" and checked otherwise.
Expression parse_bracket(const std::string& text, const std::optional<AmbientSpace>& ambient = std::nullopt);

/// Reads a bracket file: '#' starts a comment running to the end of the line.
/// Throws std::runtime_error when the file cannot be read.
std::string read_bracket_file(const std::string& path);

/// Single-term helper: the Aut-normalized bracket class of g, i.e. (1/|Aut|) xi_*.
Expression bracket_class(const DecoratedGraph& g, const Rational& coefficient = 1);

/// Inverse of parse_bracket. Internal edges are named e1, e1*, ...; extra legs W1, W2, ...
std::string render_bracket(const Expression& e);
std::string render_bracket(const DecoratedGraph& g);

/// LaTeX with \langle ... \rangle_{g} factors and \Psi^{k}(...) decorations.
std::string render_latex(const Expression& e);

}  // namespace taut
