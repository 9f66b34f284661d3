#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdissect/eta.hpp"
#include "qdissect/series.hpp"

namespace qdissect::dsl {

/// Byte range [begin, end) into the source text.
struct Span {
    int begin = 0;
    int end = 0;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Expression AST. Grammar (whitespace insignificant):
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ["-"] atom ["^" ["-"] INT]
///   atom   := INT | "q" | "f" INT | NAME | "(" expr ")"
struct ExprNode {
    enum class Kind { IntLit, QPower, EtaSym, Name, Neg, Add, Sub, Mul, Div, Pow, Paren };

    Kind kind;
    Span span;
    mpz_class int_value;   // IntLit
    int exponent = 1;      // QPower / EtaSym / Pow
    int subscript = 0;     // EtaSym
    std::string name;      // Name
    ExprPtr lhs, rhs;      // children; unary nodes use lhs only
};

struct ParseError : std::runtime_error {
    ParseError(std::string msg, Span s, std::vector<std::string> exp = {})
        : std::runtime_error(std::move(msg)), span(s), expected(std::move(exp)) {}
    Span span;
    std::vector<std::string> expected;
};

struct EvalError : std::runtime_error {
    EvalError(std::string msg, Span s) : std::runtime_error(std::move(msg)), span(s) {}
    Span span;
};

ExprPtr parse_expr(std::string_view text);

/// Prints a re-parseable form; parentheses are emitted where precedence
/// requires them, so parse(print(ast)) is structurally identical to ast
/// up to Paren wrappers.
std::string print_expr(const ExprNode& e);

/// Structural equality ignoring Paren nodes and source spans.
bool structurally_equal(const ExprNode& a, const ExprNode& b);

using Environment = std::map<std::string, Series>;

/// Compositional evaluation into series arithmetic. Name nodes resolve
/// through env (carrying their own ring and order); an absent env or an
/// unknown name raises EvalError with the node's span.
Series eval_expr(const ExprNode& e, const CoefficientRing& ring, int order,
                 const Environment* env = nullptr);

/// Converts a sum of monomials (integer * q-power * eta factors, with
/// division by a monomial) into the catalog's EtaExpr form. Throws
/// EvalError for shapes outside that fragment (names, nested sums in
/// denominators, non-integer coefficient division).
eta::EtaExpr eta_expr_from_ast(const ExprNode& e);

/// Script statements:
///   order INT
///   ring (exact | mod INT)
///   let NAME = expr
///   let NAME = extract(NAME, INT, INT)
///   let NAME = reduce(NAME, INT)
///   assert expr (== | =mod= INT) expr [upto INT]
/// '#' starts a line comment.
struct Statement {
    enum class Kind { SetOrder, SetRing, Let, LetExtract, LetReduce, AssertEqual, AssertCongruent };
    Kind kind;
    int line = 0;
    std::string text;

    int order = 0;                       // SetOrder
    std::uint64_t modulus = 0;           // SetRing (0 = exact), LetReduce, AssertCongruent
    std::string name;                    // Let* target
    std::string source;                  // LetExtract / LetReduce source name
    int residue = 0, step = 1;           // LetExtract
    ExprPtr expr;                        // Let
    ExprPtr lhs, rhs;                    // asserts
    std::optional<int> upto;             // asserts
};

struct Script {
    std::vector<Statement> statements;
};

struct ScriptError : std::runtime_error {
    ScriptError(std::string msg, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    int line;
};

Script parse_script(std::string_view text);

struct AssertionOutcome {
    int line = 0;
    std::string text;
    bool passed = false;
    int first_bad_exponent = -1;
    std::string lhs_coeff, rhs_coeff;  // at the first discrepant exponent
    int order_checked = 0;
};

struct Report {
    std::vector<AssertionOutcome> assertions;
    bool all_passed() const;
};

/// Executes statements in order. Assertion failures are recorded in the
/// report; malformed statements (undefined names, order exceeded, ring
/// mismatch) throw ScriptError with the offending line.
Report run_script(const Script& script);

Report run_script_text(std::string_view text);

}  // namespace qdissect::dsl
